//! Memory and wall-clock budgets for the CLI.

use std::io::Write as _;
use std::time::Duration;

/// Approximate resident bytes per profile memo entry, hash table slack included.
pub const BYTES_PER_DP_ENTRY: u64 = 48;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub memory_bytes: Option<u64>,
    pub time: Option<Duration>,
}

impl Budget {
    /// Memo entry cap for the profile DP implied by the memory budget.
    pub fn dp_max_entries(&self) -> usize {
        self.memory_bytes
            .map_or(usize::MAX, |b| usize::try_from(b / BYTES_PER_DP_ENTRY).unwrap_or(usize::MAX))
    }
}

/// Parses `BYTES` with an optional `K`, `M`, `G` or `T` suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let (digits, shift) = match t.char_indices().last() {
        Some((k, ch)) if ch.is_ascii_alphabetic() => {
            let shift = match ch.to_ascii_uppercase() {
                'K' => 10,
                'M' => 20,
                'G' => 30,
                'T' => 40,
                _ => return Err(format!("unknown size suffix in {s:?}")),
            };
            (&t[..k], shift)
        }
        _ => (t, 0),
    };
    let v: u64 = digits.trim().parse().map_err(|_| format!("invalid byte count {s:?}"))?;
    v.checked_mul(1 << shift).ok_or_else(|| format!("byte count {s:?} overflows"))
}

pub fn parse_seconds(s: &str) -> Result<Duration, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("invalid number of seconds {s:?}"))?;
    Duration::try_from_secs_f64(v).map_err(|_| format!("invalid number of seconds {s:?}"))
}

/// Starts a thread that ends the process with exit code 3 once `limit` has
/// elapsed, after writing `message` to stderr.
pub fn arm_watchdog(limit: Duration, message: String) {
    std::thread::spawn(move || {
        std::thread::sleep(limit);
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{message}");
        let _ = err.flush();
        std::process::exit(crate::cli::EXIT_RESOURCE);
    });
}

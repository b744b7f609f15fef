fn main() {
    std::process::exit(cores::run(std::env::args_os()));
}

fn main() {
    std::process::exit(zfourier::run(std::env::args_os()));
}

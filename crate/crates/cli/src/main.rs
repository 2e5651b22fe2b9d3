fn main() {
    std::process::exit(fracrelax::run(std::env::args_os()));
}

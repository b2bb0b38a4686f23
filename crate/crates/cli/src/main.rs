fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let run = thetadef_cli::run(&args);
    print!("{}", run.stdout);
    std::process::exit(run.code);
}

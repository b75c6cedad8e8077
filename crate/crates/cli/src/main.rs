mod commands;
mod expr;
mod render;

fn main() {
    std::process::exit(commands::run());
}

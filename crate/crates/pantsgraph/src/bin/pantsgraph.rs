fn main() {
    std::process::exit(pantsgraph_cli_main());
}

fn pantsgraph_cli_main() -> i32 {
    // filled in once the cli module lands
    eprintln!("pantsgraph: cli not wired yet");
    2
}

fn main() {
    // Placeholder until the CLI surface lands.
    eprintln!("strathom: CLI not yet wired");
    std::process::exit(3);
}

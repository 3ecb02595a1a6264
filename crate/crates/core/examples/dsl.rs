//! Parsing the text format and running commands on it.
use locus::cli::{execute, parse, print, run, Command, Flags};

const TEXT: &str = "
# A four-element Boolean frame.
frame square {
  elems: bot a b top
  leq: bot<=a bot<=b a<=top b<=top
}

set pair { elems: x y }

geotheory involution {
  sort X
  func f: X -> X
  axiom inv [x:X] true |- f(f(x)) = x
}
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse(TEXT)?;
    print!("{}", print(&doc));

    let flags = Flags { json: false, cap: Some(2), ..Flags::default() };
    for command in [
        Command::Points { file: "-".into(), block: Some("square".into()) },
        Command::Doubleexp { file: "-".into(), block: Some("pair".into()) },
        Command::Models { file: "-".into(), block: Some("involution".into()) },
    ] {
        print!("{}", run(&command, &doc, &flags)?.render(false));
    }

    let out = execute(["locus", "sierp", "neg", "01", "--json"]);
    println!("exit {}:\n{}", out.code, out.stdout);
    Ok(())
}

// The problem input language and the command runner behind the binary.

use fiberfull::cli::{parse_input, run_command, Command, Flags, Format};
use fiberfull::Result;

const PROBLEM: &str = "
# a conic degenerating to a pair of lines
ring S vars (x, y, z) weights (1, 1, 1) field QQ;
ideal I = (x*z - y^2);
order lex;
window -6:2;
";

pub fn run_example() -> Result<()> {
    let spec = parse_input(PROBLEM)?;
    println!("canonical form:\n{spec}");
    assert_eq!(parse_input(&spec.to_string())?, spec);

    for command in [Command::Gb, Command::Betti, Command::CvVerify] {
        let report = run_command(&spec, command, &Flags::default()).expect("report");
        println!("{}", report.render(Format::Json).expect("json"));
    }
    let flags = Flags {
        index: Some(2),
        ..Flags::default()
    };
    let report = run_command(&spec, Command::LocalCohom, &flags).expect("report");
    println!("{}", report.render(Format::Csv).expect("csv"));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}

//! Runs every acceptance criterion and prints one PASS/FAIL line for each.

use std::process::ExitCode;

use robin_square_cli::verify::{run, Context};

fn main() -> ExitCode {
    let outcomes = run(&Context::default(), None);
    println!("\nacceptance: {} criteria", outcomes.len());
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<u8> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| o.id)
        .collect();
    println!(
        "\nacceptance result: {} passed; {} failed {:?}\n",
        outcomes.len() - failed.len(),
        failed.len(),
        failed
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

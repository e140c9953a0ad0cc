use std::process::ExitCode;

use moduli_census::verify::criteria;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for c in criteria() {
        let outcome = c.run();
        println!("{outcome}");
        if !outcome.passed() {
            failed.push(outcome.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria().len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}

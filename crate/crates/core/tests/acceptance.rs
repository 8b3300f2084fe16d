use schubloc::battery::{run_all, KNOWN_DEVIATIONS};
use std::process::ExitCode;

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut unexpected = Vec::new();
    for r in run_all() {
        println!("{r}");
        if !r.pass() {
            for &(id, name, why) in KNOWN_DEVIATIONS.iter().filter(|d| d.0 == r.id) {
                println!("    known deviation in criterion {id} ({name}): {why}");
            }
            if !r.only_known_failures() {
                unexpected.push(r.id);
            }
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no failures outside the known deviations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}

//! Closed-form vertex and edge counts against the construction as built.

use obdd_lab::bounds::{bookkeeping_report, write_json};
use obdd_lab::Caps;

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    let reports: Vec<_> = [(1, 1), (2, 2), (3, 4)]
        .into_iter()
        .map(|(r, k)| bookkeeping_report(r, k, &caps, 0))
        .collect();
    for rep in &reports {
        println!(
            "{}: m = {}, closed form {}, divergence {}",
            rep.instance, rep.measured["actual_m"], rep.measured["paper_count"], rep.measured["divergence"]
        );
    }
    write_json(&reports, std::io::stdout())?;
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}

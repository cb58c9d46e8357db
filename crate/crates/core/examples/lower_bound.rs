//! Lower bound `2^{rk/2}` for `F_{r,k}`: exact minimum over all orders and
//! fooling sets along sampled orders.

use obdd_lab::bounds::{verify_lower_bound, LowerMode};
use obdd_lab::Caps;

pub fn run() -> obdd_lab::Result<()> {
    let caps = Caps::from_env()?;
    let exact = verify_lower_bound(1, 1, LowerMode::Exact, 0, &caps, 0)?;
    println!(
        "F_{{1,1}} exact: min internal {}, required {}, pass {}",
        exact.measured["min_internal"],
        exact.measured["required_internal"],
        exact.pass()
    );
    for (r, k) in [(1, 2), (2, 1)] {
        let rep = verify_lower_bound(r, k, LowerMode::PerOrder, 20, &caps, 3)?;
        println!(
            "F_{{{r},{k}}} over {} orders: smallest t {}, pass {}",
            rep.measured["orders"],
            rep.measured["smallest_t"],
            rep.pass()
        );
        for c in &rep.checks {
            println!("  {}: {} ({})", c.name, c.pass, c.detail);
        }
    }
    Ok(())
}

fn main() -> obdd_lab::Result<()> {
    run()
}

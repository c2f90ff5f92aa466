//! Derive the strategy constants, including the burn-in needed when Bob's
//! opening interval is too wide.

use mixed_bad::arithmetic::{ExponentPair, Rational};
use mixed_bad::game::GameParams;
use mixed_bad::strategy::{derive_constants, Derivation, Plan};

fn main() -> mixed_bad::Result<()> {
    let gp = GameParams::new(Rational::new(1, 2), Rational::new(1, 2))?;
    let e = ExponentPair::from_rationals(&Rational::new(1, 2), &Rational::new(1, 2))?;
    println!("gamma = {}", gp.gamma());

    for rho1 in ["1/16", "1/2"] {
        match derive_constants(&gp, &e, &rho1.parse()?)? {
            Derivation::Ready(k) => {
                k.check(&gp, &e)?;
                println!(
                    "rho1 = {rho1}: {}",
                    serde_json::to_string(&k).expect("constants serialize")
                );
            }
            Derivation::NeedsBurnIn { target } => {
                println!("rho1 = {rho1}: shrink to {target} first")
            }
        }
    }

    let plan = Plan::for_opening(&gp, &e, &Rational::new(1, 2))?;
    println!(
        "opening [0, 1]: {} burn-in rounds, then rho1 = {}, c = {}",
        plan.burn_in_rounds, plan.constants.rho1, plan.constants.c
    );
    Ok(())
}

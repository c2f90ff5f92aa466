//! D-adic norms, nearest-integer distances, exact power comparisons and
//! continued-fraction convergents.

use mixed_bad::arithmetic::{
    cmp_pow, convergent_denominators, dadic_norm, nearest_int_dist, DSequence, Rational,
};
use num_bigint::BigInt;

fn main() -> mixed_bad::Result<()> {
    let two = DSequence::constant(2)?;
    let mixed = DSequence::new(vec![3], vec![2])?;
    for q in [12u32, 7, 96] {
        let q = BigInt::from(q);
        println!(
            "‖{q}‖_<2> = {}, ‖{q}‖_(3,2,2,..) = {}",
            dadic_norm(&q, &two)?,
            dadic_norm(&q, &mixed)?
        );
    }

    let x: Rational = "22/7".parse()?;
    println!("‖22/7‖ = {}", nearest_int_dist(&x));

    // 2^(3/2) against 2.8 and 2.9, decided without floating point.
    let two_r = Rational::from(2);
    for b in ["14/5", "29/10"] {
        let b: Rational = b.parse()?;
        println!(
            "2^(3/2) vs {b}: {:?}",
            cmp_pow(&two_r, &"3/2".parse()?, &b)?
        );
    }

    let approx: Rational = "103993/33102".parse()?;
    let dens = convergent_denominators(&approx, &BigInt::from(40_000));
    println!("convergent denominators of {approx}: {dens:?}");
    Ok(())
}

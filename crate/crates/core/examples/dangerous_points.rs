//! The dangerous rationals of one window: membership, window index, danger
//! regions and the separation bound.

use mixed_bad::arithmetic::{DSequence, ExponentPair, Interval, Rational};
use mixed_bad::dangerous::{
    delta_intersects, enumerate_dangerous, in_c_c, separation_bound, separation_ok, window_index,
    ProblemParams, WindowParams,
};
use num_bigint::BigInt;

fn main() -> mixed_bad::Result<()> {
    let pp = ProblemParams::new(
        ExponentPair::new(1, 1, 2)?,
        DSequence::constant(2)?,
        Rational::pow2(-15),
    )?;
    let wp = WindowParams::new(Rational::from(4), 2)?;

    for q in [1u64 << 15, 3 << 17, 5 << 17] {
        let q = BigInt::from(q);
        println!(
            "q = {q}: in C_c {}, window {}",
            in_c_c(&q, &pp),
            window_index(&q, &wp, pp.exponents())
        );
    }

    let near = Interval::new(
        Rational::new(1, 3),
        Rational::new(1, 3) + Rational::pow2(-12),
    )?;
    let points = enumerate_dangerous(6, &near, &pp, &wp);
    println!("window 6 points meeting {near}: {}", points.len());
    for p in points.iter().take(4) {
        println!("  {p}  value ~ {:.9}", p.value().to_f64());
    }

    let bound = separation_bound(6, &pp, &wp);
    println!("separation bound at k = 6 ~ {:.3e}", bound.to_f64());
    println!(
        "separation holds over [0, 1]: {}",
        separation_ok(
            6,
            &Interval::new(Rational::zero(), Rational::one())?,
            &pp,
            &wp
        )
    );

    let tight = Interval::around(&Rational::pow2(-15), &Rational::pow2(-31))?;
    let p = &enumerate_dangerous(6, &tight, &pp, &wp)[0];
    println!(
        "{p} threatens {tight}: {}",
        delta_intersects(p, &tight, &pp)
    );
    Ok(())
}

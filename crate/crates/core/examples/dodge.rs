//! Alice fleeing a fixed point for two turns while Bob tries every extremal
//! reply.

use mixed_bad::arithmetic::{dist_point_interval, inscribed_interval, Interval, Rational};
use mixed_bad::strategy::dodge_move;

fn main() -> mixed_bad::Result<()> {
    let alpha = Rational::new(1, 2);
    let beta = Rational::new(1, 2);
    let b = Interval::new(Rational::zero(), Rational::one())?;
    let y = Rational::new(1, 2);
    let gamma = Rational::one() - &alpha * Rational::from(2) + &alpha * &beta;
    let need = &gamma * b.radius() / Rational::from(2);

    for first in [0, 1] {
        for second in [0, 1] {
            let mut current = b.clone();
            for bob in [first, second] {
                let a = dodge_move(&current, &y, &alpha)?;
                current = inscribed_interval(&a, &beta, &Rational::from(bob))?;
            }
            let d = dist_point_interval(&y, &current);
            println!(
                "bob {first}{second}: final {current}, dist {d} > {need}: {}",
                d > need
            );
        }
    }
    Ok(())
}

//! Every orbit lands on the arc of right triangles after one letter and
//! never moves again.

use leab::shape_space::{orbit, sample_sigma, ShapePoint, Word};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> leab::Result<()> {
    let word: Word = "LRRLLR".parse()?;
    let mut starts = vec![ShapePoint::new(0.25, 0.125)?, ShapePoint::new(0.36, 0.48)?];
    let mut rng = StdRng::seed_from_u64(7);
    starts.extend((0..3).map(|_| sample_sigma(&mut rng)));

    for z in starts {
        let trace = orbit(z, &word);
        let drift = trace
            .steps
            .iter()
            .map(|(_, p)| p.dist(&trace.steps[0].1))
            .fold(0.0, f64::max);
        println!(
            "{z}  --{word}-->  {}   max residual {:.1e}, drift after first step {drift:.1e}",
            trace.last(),
            trace.residuals.iter().copied().fold(0.0, f64::max)
        );
    }
    Ok(())
}

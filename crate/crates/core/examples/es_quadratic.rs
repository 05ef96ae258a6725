//! Plain evolution strategies on a quadratic bowl.

use psyco::es::{es_generation, EsConfig};
use psyco::seed::stream;

fn main() -> psyco::Result<()> {
    let target = [1.0, -2.0, 0.5, 3.0];
    let cfg = EsConfig {
        population: 50,
        sigma: 0.1,
        alpha: 0.05,
        ..EsConfig::default()
    };
    let loss = |x: &[f64]| x.iter().zip(&target).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
    let mut rng = stream(7, &[0]);
    let mut theta = vec![0.0; target.len()];
    for generation in 0..=400 {
        if generation % 50 == 0 {
            println!("generation {generation:>3}: loss {:.5}", loss(&theta));
        }
        theta = es_generation(&theta, &cfg, |x, _| Ok(-loss(x)), &mut rng)?;
    }
    println!("theta = {theta:.3?}");
    Ok(())
}

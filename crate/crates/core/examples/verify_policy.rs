//! Verifies policies on the Bernoulli toy, where the true satisfaction
//! probability is known, and prints the sequential test's verdicts.

use psyco::envs::BernoulliToy;
use psyco::seed::stream;
use psyco::{bayesian_verify, parse_requirement, PolicyParams};

fn main() -> psyco::Result<()> {
    let req = parse_requirement("P[>=0.8](G safe) with C[>=0.98]")?;
    println!("requirement {req}");
    for (i, p) in [0.5, 0.7, 0.78, 0.82, 0.9, 0.99].into_iter().enumerate() {
        let env = BernoulliToy::new(p);
        let theta = PolicyParams::zeros(env.policy_shape());
        let v = bayesian_verify(&env, &theta, &req, env.horizon(), 1000, &mut stream(0, &[i as u64]))?;
        println!(
            "p = {p:<5} {:<12} after {:>4} episodes, c_sat {:.4}",
            v.outcome.as_str(),
            v.episodes_used,
            v.c_sat
        );
    }
    Ok(())
}

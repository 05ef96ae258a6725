//! Parses requirements and checks them on hand-written episodes.
//!
//! `cargo run --example parse_requirement -- "P[>=0.9](safe U goal) with C[>=0.95]"`

use psyco::pctl::{cumulative_cost, satisfies, Labeling};
use psyco::{parse_requirement, Episode};

fn main() -> psyco::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "P[>=0.9](safe U goal) with C[>=0.95]".to_string());
    let req = parse_requirement(&text)?;
    println!("parsed:    {req}");
    println!("path:      {:?}", req.path);
    println!("atoms:     {:?}", req.path.atoms());

    // states are integers; even numbers are safe, 4 is the goal
    let lab: Labeling<i32> = Labeling::new()
        .with("safe", |s: &i32| s % 2 == 0)
        .with("goal", |s: &i32| *s == 4)
        .with("collision_free", |s: &i32| *s >= 0)
        .with("within_budget", |s: &i32| *s < 10)
        .with("off_target", |s: &i32| *s != 4);
    if let Err(e) = lab.check(req.path.atoms()) {
        println!("cannot evaluate on the demo labeling: {e}");
        return Ok(());
    }
    for path in [vec![0, 2, 4], vec![0, 1, 4], vec![2, 2, 2, 2], vec![-1, 0, 12]] {
        let e = Episode::from_path(&path);
        println!(
            "{path:?}: satisfied = {}, cost = {}",
            satisfies(&e, &req.path, &lab)?,
            cumulative_cost(&e, &req.path, &lab)?
        );
    }
    Ok(())
}

//! Confidence that the satisfaction probability exceeds a threshold, as
//! satisfying episodes accumulate.

use psyco::BetaPosterior;

fn main() -> psyco::Result<()> {
    let p_req = 0.85;
    println!("{:>6} {:>6} {:>10}", "s", "v", "c_sat");
    for (s, v) in [
        (0, 0),
        (5, 0),
        (20, 0),
        (20, 1),
        (50, 5),
        (100, 10),
        (200, 20),
        (500, 50),
    ] {
        let post = BetaPosterior::new(s, v);
        println!("{s:>6} {v:>6} {:>10.6}", post.confidence_above(p_req)?);
    }
    // sequential updates: stop once c_sat reaches 0.98
    let mut post = BetaPosterior::default();
    let mut n = 0;
    while post.confidence_above(p_req)? < 0.98 {
        post = post.update(n % 15 != 14);
        n += 1;
    }
    println!("14-in-15 satisfying episodes reach c_sat >= 0.98 after {n} episodes");
    Ok(())
}

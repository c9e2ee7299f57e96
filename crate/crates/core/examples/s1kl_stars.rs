//! `S(1,k,ℓ)` under `I_N` for large `k` and `ℓ`, checked against the star
//! solver where that is affordable.

use csg::closed_forms::{claim_star1kn_grundy, ClaimParams};
use csg::{ClosedForms, StarSolver, SubdividedStar, SubtractionSet};

fn main() -> csg::Result<()> {
    let cf = ClosedForms::new();
    let n = 8;
    let mut solver = StarSolver::new(SubtractionSet::interval(n)?);
    for (k, l) in [(8, 2), (8, 11), (25, 31), (17, 9)] {
        let fast = cf.s1kl_grundy(k, l, n)?;
        let slow = solver.grundy(&SubdividedStar::new([1, k, l]));
        println!("S(1,{k},{l}) under I:{n}: {fast} (solver {slow})");
    }
    println!(
        "S(1,1000000,999999) under I:{n}: {}",
        cf.s1kl_grundy(1_000_000, 999_999, n)?
    );

    let params = ClaimParams::compute(n, &cf)?;
    let column: Vec<String> = (1..=2 * n)
        .filter(|&k| k != n && k != n + 1)
        .map(|k| {
            format!(
                "{k}:{}",
                claim_star1kn_grundy(k, &params).map_or("-".into(), |v| v.to_string())
            )
        })
        .collect();
    println!("S(1,k,{n}) column: {}", column.join(" "));
    Ok(())
}

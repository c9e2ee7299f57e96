//! Values of `S(1^t, k)` under `I_N`: the periodic reduction against the
//! star solver.

use csg::{ClosedForms, StarSolver, SubdividedStar, SubtractionSet};

fn main() -> csg::Result<()> {
    let n = 4;
    let cf = ClosedForms::new();
    let mut solver = StarSolver::new(SubtractionSet::interval(n)?);
    println!("S(1^t,k) under I:{n}; rows k, columns t");
    for k in 0..=8 {
        let mut row = Vec::new();
        for t in 0..=10 {
            let v = cf.simple_star_appended_grundy(t, k, n)?;
            assert_eq!(v, solver.grundy(&SubdividedStar::simple(t).with_branch(k)));
            row.push(v.to_string());
        }
        println!("{k}: {}", row.join(" "));
    }
    // Far outside the brute-force range.
    let (t, k) = (1000, 123_456);
    println!(
        "S(1^{t},{k}) = {}",
        cf.simple_star_appended_grundy(t, k, n)?
    );
    Ok(())
}

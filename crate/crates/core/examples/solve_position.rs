//! Grundy values of single graphs and of a sum of two graphs.

use csg::{
    grundy_sum, GraphSolver, GraphSpec, Position, StarSolver, SubdividedStar, SubtractionSet,
};

fn main() -> csg::Result<()> {
    let l: SubtractionSet = "1,2,4".parse()?;
    for text in ["sstar:1,1,1,2", "path:4", "edges:0-1,1-2,2-0,2-3"] {
        let g = text.parse::<GraphSpec>()?.realize()?;
        let mut solver = GraphSolver::new(g, l.clone());
        let v = solver.grundy_whole();
        println!(
            "{text:<24} L={l}  grundy {v}  outcome {:?}  memo {}",
            v.outcome(),
            solver.memo_len()
        );
    }

    // Stars are solved by shape, so long branches are cheap.
    let mut stars = StarSolver::new(SubtractionSet::interval(8)?);
    for branches in [[1, 8, 2], [1, 8, 11], [1, 40, 37]] {
        let s = SubdividedStar::new(branches);
        println!("{s} under I:8  grundy {}", stars.grundy(&s));
    }

    let a = "path:3".parse::<GraphSpec>()?.realize()?;
    let b = "star:1^3".parse::<GraphSpec>()?.realize()?;
    let mut memo = csg::TranspositionTable::new();
    let sum = grundy_sum(&[Position::whole(a), Position::whole(b)], &l, &mut memo);
    println!("path:3 + star:1^3 under {l}: {sum}");
    Ok(())
}

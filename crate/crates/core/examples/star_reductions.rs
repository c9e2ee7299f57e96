//! Branch reductions under `{1,2,3}` (mod 4) and `{1,2,4}` (mod 3), and the
//! `{1,2,4}` families with closed forms.

use csg::{ClosedForms, Family124, SubdividedStar};

fn main() {
    let cf = ClosedForms::new();
    for b in [vec![5, 1, 1], vec![1, 2, 7], vec![30, 21, 14, 9]] {
        let s = SubdividedStar::new(b);
        println!(
            "{s}: CSG(1,2,3) {} via {}",
            cf.csg123_star_grundy(&s),
            s.reduce_mod(4)
        );
    }
    for b in [vec![3, 3, 1], vec![6, 6, 4], vec![100, 50, 2, 1]] {
        let s = SubdividedStar::new(b);
        println!(
            "{s}: CSG(1,2,4) {} via {}",
            cf.csg124_star_grundy(&s),
            s.reduce_mod(3)
        );
    }
    for f in Family124::ALL {
        let values: String = (0..12)
            .map(|k| cf.csg124_star_grundy(&f.star(k)).to_string())
            .collect();
        println!("{f:<8} k=0..11: {values}");
    }
}

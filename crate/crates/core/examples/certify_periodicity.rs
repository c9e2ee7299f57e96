//! Certifies the period of appended-path families and compares it with the
//! period of the path sequence.

use csg::certify::replay_against_solver;
use csg::{certify_period, make_subdivided_star, Graph, SubtractionSet};

fn main() -> csg::Result<()> {
    let cases = [
        (Graph::empty(), None, "I:3"),
        (make_subdivided_star(&[1, 1, 1])?, Some(0), "I:4"),
        (make_subdivided_star(&[1, 1])?, Some(0), "2,4,7"),
        (make_subdivided_star(&[2, 1])?, Some(2), "1,3"),
    ];
    for (base, anchor, l) in cases {
        let l: SubtractionSet = l.parse()?;
        let cert = certify_period(&base, anchor, &l, csg::certify::DEFAULT_BOUND)?;
        print!("{}", cert.to_text());
        let replay = match replay_against_solver(&cert)? {
            None => "agrees with the solver".to_string(),
            Some(k) => format!("differs at k={k}"),
        };
        println!("replay {replay}\n");
    }
    Ok(())
}

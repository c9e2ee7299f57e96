//! Path sequences under several subtraction sets, with the detected period.

use csg::closed_forms::subtraction_sequence;
use csg::{detect_period, SubtractionSet};

fn main() -> csg::Result<()> {
    for text in ["I:1", "I:3", "1,2,4", "2,4,7", "1,3", "I:3+8"] {
        let l: SubtractionSet = text.parse()?;
        let values = subtraction_sequence(&l, 80);
        let period = detect_period(&values, l.max())?;
        println!("{:<8} {}", l.to_string(), period.sequence);
    }
    Ok(())
}

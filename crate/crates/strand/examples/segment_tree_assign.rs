//! Drives the assign-max segment tree through a few range updates and reads
//! the settled array back after one push.

use strand::segment_tree::SegmentTree;

fn main() -> strand::Result<()> {
    let mut tree = SegmentTree::construct(&vec![(0, -1); 8])?;
    // An update wins only where it carries a strictly larger value.
    tree.update(1, 6, 3, 10)?;
    tree.update(4, 8, 2, 20)?;
    tree.update(2, 3, 5, 30)?;
    tree.push();
    for i in 1..=tree.len() {
        let (value, index) = tree.request(i)?;
        println!("position {i}: value {value}, written by update {index}");
    }
    Ok(())
}

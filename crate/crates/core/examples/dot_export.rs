//! Writes Graphviz renderings of a stable tube and the FIX-B8 quiver.

use arquiver::fixtures::algebra;
use arquiver::io::{quiver_to_dot, tquiver_to_dot};
use arquiver::tquiver::build_stable_tube;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("arquiver-dot");
    std::fs::create_dir_all(&dir)?;
    let tube = tquiver_to_dot(&build_stable_tube(2, 4), "tube");
    let b8 = quiver_to_dot(algebra("FIX-B8")?.quiver(), "B8");
    for (file, text) in [("tube.dot", tube), ("b8.dot", b8)] {
        let path = dir.join(file);
        std::fs::write(&path, &text)?;
        println!("{} ({} lines)", path.display(), text.lines().count());
    }
    Ok(())
}

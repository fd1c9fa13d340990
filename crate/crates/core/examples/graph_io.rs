//! Writing and reading the `spr-graph` text format and the JSON minor
//! record.

use spr::graph::io::{graph_to_string, parse_graph};
use spr::{gen_random, load_graph, save_graph, Algorithm, MinorRecord, RunOptions, Runner};

fn main() -> spr::Result<()> {
    let g = gen_random(12, 20, 3, 4, (1.0, 3.0))?;
    let text = graph_to_string(&g);
    print!("{text}");
    assert_eq!(parse_graph(&text)?.edges(), g.edges());

    let path = std::env::temp_dir().join(format!("spr-example-{}.spr", std::process::id()));
    save_graph(&g, &path)?;
    let loaded = load_graph(&path)?;
    std::fs::remove_file(&path)?;
    println!("file round trip preserves edges: {}", loaded.edges() == g.edges());

    let runner = Runner::new(&loaded);
    let out = runner.run(Algorithm::Fast, 1, &RunOptions::default())?;
    let (worst, _) = runner.worst_distortion(&out.minor)?;
    let record = MinorRecord::new(&out, worst);
    let line = record.to_json();
    println!("{line}");
    let back = MinorRecord::read(line.as_bytes())?;
    println!("record round trip: {}", back == record);
    Ok(())
}

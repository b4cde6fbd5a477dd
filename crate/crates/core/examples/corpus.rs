//! A seeded corpus, written out and read back through the file format.

use nssets::corpus::{generate, CorpusSpec};
use nssets::format::{set_from_json, set_to_json};

fn main() -> nssets::Result<()> {
    let spec = CorpusSpec::new(0, 8);
    for (k, x) in generate(&spec)?.iter().enumerate() {
        let text = set_to_json(x);
        let back = set_from_json(&text)?;
        println!(
            "{k}: counts {:?}  non-singular {:<5}  {} bytes, round trip {}",
            x.counts(),
            x.is_nonsingular(),
            text.len(),
            back == *x
        );
    }
    Ok(())
}

//! Writes every built-in figure as a canonical document into the given directory.

use std::path::PathBuf;

use ribbon_core::document::serialize_document;
use ribbon_core::figures;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "tests/data".into()));
    std::fs::create_dir_all(&dir)?;
    for (name, doc) in figures::all() {
        std::fs::write(dir.join(format!("{name}.rcx")), serialize_document(&doc))?;
    }
    Ok(())
}

//! Verification run stored and summarised as markdown.

use trapmodes::harness::{render, verify, Config, ReportFormat, ResultStore, StoreEntry};

fn main() -> trapmodes::Result<()> {
    let cfg = Config::default();
    let report = verify(0.5, &cfg);
    let path = std::env::temp_dir().join("trapmodes_example_store.jsonl");
    let _ = std::fs::remove_file(&path);
    let store = ResultStore::new(&path);
    store.append(&StoreEntry::new("verify", report.inputs.clone(), serde_json::to_value(&report)?))?;
    print!("{}", render(&store.load()?, ReportFormat::Markdown));
    Ok(())
}

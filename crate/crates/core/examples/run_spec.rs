//! Parse a spec document and run its checks, as `hermcone check` does.

use hermcone::spec::{parse_spec, render_text, run_checks, RunOptions};

const DOC: &str = "
[field]
base = Q

[algebra]
kind = quaternion
a = 2
b = 3

[involution]
i = i
j = j

[checks]
gram
diagonalize expect=1,3
reality element=i expect=NOT_FORMALLY_REAL
crossinvo expect=FORMALLY_REAL
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1);
    let text = match &path {
        Some(p) => std::fs::read_to_string(p)?,
        None => DOC.to_string(),
    };
    let mut doc = parse_spec(&text)?;
    doc.name = path.unwrap_or_else(|| "inline".into());
    let records = run_checks(&doc, &RunOptions::default());
    print!("{}", render_text(&records));
    if let Some(r) = records.iter().find(|r| r.check == "reality") {
        println!("{}", serde_json::to_string_pretty(&r.certificate)?);
    }
    Ok(())
}

//! Serializing modular data and forms to the canonical JSON documents.
use modcat::constructors::{double_abelian, pointed};
use modcat::groups::PreMetricGroup;
use modcat::io;
use num_rational::Rational64;

fn main() -> modcat::Result<()> {
    let semion = PreMetricGroup::new(vec![2], vec![Rational64::new(0, 1), Rational64::new(1, 4)])?;
    let form = io::form_to_json(&semion);
    println!("{}", io::to_canonical_string(&form));

    let md = pointed(&semion)?;
    let doc = io::modular_data_to_json(&md);
    let back = io::modular_data_from_json(&doc, "semion")?;
    println!("round trip preserves S: {}", back.s() == md.s());

    let text = io::to_canonical_string(&io::modular_data_to_json(&double_abelian(&[2])));
    println!("toric code document: {} bytes", text.len());
    match io::parse_document("{\"ring\": 3}", "inline") {
        Ok(doc) => println!("parsed, but {}", io::modular_data_from_json(&doc, "inline").unwrap_err()),
        Err(e) => println!("{e}"),
    }
    Ok(())
}

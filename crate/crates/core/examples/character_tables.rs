//! Character tables of small groups.
use modcat::groups::{builtin, CharacterTable, DEFAULT_ORDER_BOUND};

fn main() -> modcat::Result<()> {
    for (name, g) in [("S3", builtin::s3()), ("D4", builtin::d4()), ("Q8", builtin::q8())] {
        let table = CharacterTable::compute(&g, DEFAULT_ORDER_BOUND)?;
        println!("{name}: order {}, {} classes, degrees {:?}", g.order(), table.classes.len(), table.degrees());
        for row in &table.chars {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            println!("  [{}]", cells.join(", "));
        }
        println!("  orthogonality holds: {}", table.validate(&g).is_valid());
    }
    Ok(())
}

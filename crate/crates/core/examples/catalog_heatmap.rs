// Browse the primitive catalog and print the usage heatmap.

use std::error::Error;

use qsaf::analyze::tier_report;
use qsaf::catalog::{self, find};
use qsaf::model::Algorithm;

pub fn run() -> Result<(), Box<dyn Error>> {
    print!("{}", qsaf::report::heatmap_table());

    let qft = find("StandardQft")?;
    println!("\n{} is {} ({})", qft.name, qft.category.label(), qft.complexity_class.label);
    for a in Algorithm::ALL {
        println!("  {:<6} {}", a.label(), qft.usage(a).code());
    }

    let universal: Vec<&str> = catalog::catalog()
        .iter()
        .filter(|d| tier_report(d.id.get()).map(|t| t.tier.label() == "universal").unwrap_or(false))
        .map(|d| d.name)
        .collect();
    println!("\n{} primitives are essential or frequent everywhere: {}", universal.len(), universal.join(", "));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

// Attribute-based classification and Fleiss' kappa over rater tables.

use std::error::Error;

use qsaf::catalog;
use qsaf::classify::{check_mece, classify, fleiss_terms, Criterion, RatingsMatrix};

pub fn run() -> Result<(), Box<dyn Error>> {
    for id in ["BellStates", "InverseQft", "UccsdAnsatz", "ToffoliGates"] {
        let d = catalog::find(id)?;
        match classify(&d.attributes) {
            Ok(c) => println!("{:<16} -> {}", d.name, c.label()),
            Err(e) => println!("{:<16} -> none ({e})", d.name),
        }
    }
    let report = check_mece(catalog::catalog());
    println!("checked {} primitives, {} violations", report.checked, report.violations.len());

    let d = catalog::find("GroverOperator")?;
    let mut two = d.attributes;
    two.set(Criterion::Basis, true);
    println!("grover with the basis flag also set, first match: {:?}", classify(&two));

    let csv = "a,b,c\n3,0,0\n0,3,0\n1,1,1\n0,2,1\n";
    let m = RatingsMatrix::from_csv(csv.as_bytes())?;
    let t = fleiss_terms(&m)?;
    println!("{} items, {} raters: P_bar = {:.4}, P_e = {:.4}, kappa = {:.4}", m.items(), m.raters(), t.p_bar, t.p_e, t.kappa);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

// Trade-off reports between ansatz choices under two hardware eras.

use std::error::Error;

use qsaf::analyze::{ansatz_options, compare, complexity_check, Context, HardwareEra};
use qsaf::report::{add_fit, add_tradeoff, Report};

pub fn run() -> Result<(), Box<dyn Error>> {
    for era in [HardwareEra::Nisq, HardwareEra::FaultTolerant] {
        let ctx = Context::new(era);
        let (a, b) = ansatz_options(&ctx)?;
        let t = compare(&a, &b, &ctx);
        let mut r = Report::new();
        add_tradeoff(&mut r, &t);
        println!("{}: {}", era.label(), t.recommended().map(|o| o.label.as_str()).unwrap_or("tie"));
        for line in &t.rationale {
            println!("  {line}");
        }
    }

    let mut r = Report::new();
    add_fit(&mut r, &complexity_check(15, &[4, 8, 16])?);
    add_fit(&mut r, &complexity_check(8, &[4, 8, 16])?);
    print!("\n{r}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

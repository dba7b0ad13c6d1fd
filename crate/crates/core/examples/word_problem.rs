//! Deciding equality in the monoid, with the branch trace of each query.

use small_overlap::{Presentation, Solver, Trace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres: Presentation = "gens: a b c\nrel: cbbb = bbba\n".parse()?;
    let solver = Solver::new(pres)?;
    let pres = solver.presentation();

    for (u, v) in [("cbbba", "cbbba"), ("ccbbb", "bbbaa"), ("bbbaa", "ccbbb"), ("cbbbc", "bbbac"), ("abc", "acb")] {
        let mut trace = Trace::default();
        let equal = solver.wp_prefix_observed(&pres.parse_word(u)?, &pres.parse_word(v)?, &[], &mut trace)?;
        println!("{u} = {v}: {equal:<5}  [{trace}]");
    }

    // Presentations that are not weakly C(4) are refused.
    let not_c4: Presentation = "gens: a b\nrel: aba = b\n".parse()?;
    println!("{}", Solver::new(not_c4).unwrap_err());
    Ok(())
}

//! Which pieces can begin a word equal to a given one.

use small_overlap::{Presentation, Solver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres: Presentation = "gens: a b c d\nrel: abcd = badc\nrel: abcd = dacb\n".parse()?;
    let solver = Solver::new(pres)?;
    let pres = solver.presentation();
    let pieces = solver.index().pieces().pieces();

    for text in ["abcd", "aabcd", "abcdabcd", "cab"] {
        let u = pres.parse_word(text)?;
        let mut possible = Vec::new();
        for p in &pieces {
            if solver.possible_piece_prefix(p, &u)? {
                possible.push(pres.format_word(p));
            }
        }
        println!("{text}: {}", possible.join(" "));
    }
    Ok(())
}

//! Brute-force equivalence classes and shortlex normal forms, checked
//! against the linear-time solver.

use small_overlap::oracle::{all_words, ClassCache, OracleBudget};
use small_overlap::{Presentation, Solver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres: Presentation = "gens: a b c d\nrel: abcd = badc\nrel: abcd = dacb\n".parse()?;
    let solver = Solver::new(pres.clone())?;
    let mut oracle = ClassCache::new(&pres, OracleBudget::default());

    for text in ["dacb", "badcbadc", "aabcd"] {
        let class = oracle.class(&pres.parse_word(text)?)?;
        let members: Vec<String> = class.members.iter().map(|m| pres.format_word(m)).collect();
        println!("{text}: normal form {} of {{{}}}", pres.format_word(class.normal_form()), members.join(", "));
    }

    // Pairs of length-8 words share a normal form exactly when the solver calls them equal.
    let words: Vec<_> = all_words(4, 8).into_iter().filter(|w| w.len() == 8).step_by(16).collect();
    let mut agree = 0;
    for (i, u) in words.iter().enumerate() {
        let class = oracle.class(u)?.clone();
        let v = if i % 2 == 0 { class.members.iter().last().unwrap().clone() } else { words[(i * 7919) % words.len()].clone() };
        let same = class.normal_form() == oracle.class(&v)?.normal_form();
        agree += usize::from(same == solver.equals(u, &v));
    }
    println!("agreement on {} pairs: {agree}", words.len());
    Ok(())
}

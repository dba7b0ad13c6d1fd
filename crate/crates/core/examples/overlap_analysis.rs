//! Relation prefixes, overlap prefixes and cleanliness of a few words.

use small_overlap::{OverlapIndex, Presentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pres: Presentation = "gens: a b c d e f g h t u v w x y\nrel: abcd = efgh\nrel: cxyw = dtuv\n".parse()?;
    let index = OverlapIndex::new(&pres)?;
    let fmt = |w: &[u32]| pres.format_word(w);

    for text in ["abcd", "abcxyw", "eabcdh", "tuvw"] {
        let u = pres.parse_word(text)?;
        println!("{text}:");
        match index.find_shortest_relation_prefix(&u[..]) {
            Some(rp) => println!("  shortest relation prefix ends at {} ({})", index.end_of(&rp), fmt(&index.info(rp.word_id).word)),
            None => println!("  no relation prefix"),
        }
        for rec in index.overlap_prefixes(&u) {
            let links: Vec<String> = rec.segments.iter().map(|s| format!("{}|{}", fmt(&s.x), fmt(&s.y_prime))).collect();
            println!(
                "  overlap prefix b={} links=[{}] terminal={}|{} clean={}",
                fmt(&rec.b),
                links.join(", "),
                fmt(&rec.terminal_x),
                fmt(&rec.terminal_y),
                rec.clean
            );
        }
        let leading = index.leading_clean_overlap_prefix(&u[..]).map(|r| fmt(&index.info(r).word));
        println!("  leading clean prefix from: {}", leading.unwrap_or_else(|| "none".into()));
    }
    Ok(())
}

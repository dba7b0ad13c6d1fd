//! Pieces, X/Y/Z factorizations and the C(n) report of a presentation.
//!
//! `cargo run --example classify -- crates/core/fixtures/p2.pres`

use small_overlap::{classify, compute_pieces, factorize_xyz, parse_presentation};

const DEFAULT: &str = "gens: a b c d\nrel: abcd = badc\nrel: abcd = dacb\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let pres = parse_presentation(&text)?;
    let pieces = compute_pieces(&pres);
    let listed: Vec<String> = pieces.pieces().iter().map(|p| pres.format_word(p)).collect();
    println!("pieces: {}", listed.join(" "));

    for r in pres.relation_words() {
        match factorize_xyz(&pres, &pieces, r) {
            Ok(info) => println!(
                "{:>10} = {} . {} . {}   min pieces {:?}",
                pres.format_word(r),
                pres.format_word(info.x()),
                pres.format_word(info.y()),
                pres.format_word(info.z()),
                pieces.min_piece_count(r)
            ),
            Err(e) => println!("{:>10}: {e}", pres.format_word(r)),
        }
    }

    let report = classify(&pres);
    println!("{report}");
    println!("weakly C(4): {}  strongly C(4): {}", report.weakly(4), report.strongly(4));
    Ok(())
}

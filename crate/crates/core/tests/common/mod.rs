#![allow(dead_code)]

use small_overlap::oracle::{gen_presentation, GenParams};
use small_overlap::{Presentation, Word};

pub const P1: &str = "gens: a b c d\nrel: abcd = badc\n";
pub const P2: &str = "gens: a b c d\nrel: abcd = badc\nrel: abcd = dacb\n";
pub const P3: &str = "gens: a b\nrel: aba = b\n";

/// `abc·hijk ≡ def·hijk` goes through the last case of the loop.
pub const CASE6: &str = "gens: a b c d e f g h i j k x y z\nrel: abcg = defg\nrel: gxyz = hijk\n";

/// `u = abcxyw` has the dirty relation prefix `abc` and the clean
/// overlap prefix `ab·cxyw`.
pub const DIRTY: &str = "gens: a b c d e f g h t u v w x y\nrel: abcd = efgh\nrel: cxyw = dtuv\n";

pub fn pres(text: &str) -> Presentation {
    text.parse().expect("fixture parses")
}

pub fn w(p: &Presentation, s: &str) -> Word {
    p.parse_word(s).expect("fixture word parses")
}

/// Generated weakly C(4) presentations over 3 or 4 letters, small enough
/// to compare against the oracle on every pair of short words.
pub fn generated_fixtures(count: usize) -> Vec<Presentation> {
    const SHAPES: [(usize, usize, usize, usize); 6] =
        [(3, 1, 4, 6), (4, 1, 4, 8), (3, 2, 4, 6), (4, 2, 4, 8), (4, 3, 4, 8), (4, 3, 5, 8)];
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let (alphabet_size, num_relations, min_len, max_len) = SHAPES[out.len() % SHAPES.len()];
        let params = GenParams { alphabet_size, num_relations, min_len, max_len };
        if let Ok((p, _)) = gen_presentation(params, 1000 + seed) {
            out.push(p);
        }
        seed += 1;
    }
    out
}

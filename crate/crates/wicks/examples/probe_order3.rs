use wicks::{canon, flows, generate_recursive, parse_word, SymmetryParams};

fn main() {
    let census = generate_recursive(3).unwrap();
    let mut tested = 0;
    let mut empty = 0;
    for class in &census.classes {
        let word = parse_word(&class.canonical).unwrap().0;
        for (&shift, params) in &class.symmetry {
            if let SymmetryParams::Order3 { s, t } = params {
                if *t != 0 {
                    continue;
                }
                match flows::quotient_by_order3(&word, shift) {
                    Ok(q) => {
                        tested += 1;
                        if q.reduced.is_none() {
                            empty += 1;
                            assert_eq!((3 + 1 - s) / 3, 0);
                        } else {
                            let f = (3 + 1 - s) / 3;
                            assert_eq!(q.quotient_genus, f);
                        }
                    }
                    Err(e) => {
                        println!("FAILED s={s} t={t} shift={shift} word={}: {e}", class.canonical);
                        std::process::exit(1);
                    }
                }
            }
        }
        // also check invariant flow dims per Lemma 3.1
        for (&shift, params) in &class.symmetry {
            if let SymmetryParams::Order3 { s, t } = params {
                let dim = flows::invariant_flow_dimension(&word, shift, 2).unwrap();
                assert_eq!(dim, (3 + 1 - s - t) / 3, "lemma failed for {}", class.canonical);
            }
        }
    }
    println!("order-3 quotients tested: {tested} (empty: {empty})");
    // order-2 quotients across the genus-3 census
    let mut inv = 0;
    for class in &census.classes {
        let word = parse_word(&class.canonical).unwrap().0;
        for (&shift, params) in &class.symmetry {
            if let SymmetryParams::Order2 { r } = params {
                let q = flows::quotient_by_involution(&word, shift).unwrap();
                assert_eq!(q.quotient_genus, (2 * 3 + 1 - r) / 4);
                if let Some(reduced) = &q.reduced {
                    let _ = canon::canonical_form(reduced);
                }
                inv += 1;
            }
        }
    }
    println!("order-2 quotients tested: {inv}");
}

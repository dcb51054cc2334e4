use std::collections::BTreeMap;
use wicks::{canon, generate_recursive, parse_word, flows, SurfaceMap, SymmetryParams, Sign, Letter};

fn main() {
    for g in [1usize, 2, 3] {
        let census = generate_recursive(g).unwrap();
        for class in &census.classes {
            let word = parse_word(&class.canonical).unwrap().0;
            let mut shown = false;
            for (&shift, params) in &class.symmetry {
                let SymmetryParams::Order3 { s, t } = params else { continue };
                if shown { continue; }
                shown = true;
                let dim = flows::invariant_flow_dimension(&word, shift, 2).unwrap();

                let bij = canon::letter_bijection(&word, shift).unwrap();
                let ids = word.edge_ids();
                let mut orbit_of: BTreeMap<_, usize> = BTreeMap::new();
                let mut orbits = 0;
                for &id in &ids {
                    if orbit_of.contains_key(&id) { continue; }
                    let mut l = Letter { id, sign: Sign::Plus };
                    for _ in 0..3 {
                        orbit_of.insert(l.id, orbits);
                        l = bij[&l];
                    }
                    orbits += 1;
                }
                let surface = SurfaceMap::build(&word).unwrap();
                let mut count = 0u64;
                for mask in 0u32..(1 << orbits) {
                    let values: BTreeMap<_, _> = ids.iter()
                        .map(|&id| (id, ((mask >> orbit_of[&id]) & 1) as u8))
                        .collect();
                    let fv = flows::FlowVector { modulus: 2, values };
                    if fv.conserves(&surface) { count += 1; }
                }
                let brute = count.trailing_zeros() as usize;
                let lemma = (g + 1).saturating_sub(s + t) / 3;
                println!("g={g} aut={} (s,t)=({s},{t}) rank_dim={dim} brute={brute} lemma={lemma} {}",
                    class.aut_order, if dim == lemma {"OK"} else {"MISMATCH"});
            }
        }
    }
}

mod common;

use common::{braid, braid_pair};
use knotfield::braid::{closure_components, free_reduce, markov_conjugate, underlying_permutation, BraidWord};
use proptest::prelude::*;

/// Tracks each strand position through the word letter by letter.
fn strand_positions(w: &BraidWord) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..w.strands()).collect();
    for &l in w.letters() {
        let k = l.unsigned_abs() as usize - 1;
        for p in pos.iter_mut() {
            if *p == k {
                *p = k + 1;
            } else if *p == k + 1 {
                *p = k;
            }
        }
    }
    pos
}

fn components_by_hand(w: &BraidWord) -> usize {
    let pos = strand_positions(w);
    let mut seen = vec![false; pos.len()];
    let mut count = 0;
    for s in 0..pos.len() {
        if !seen[s] {
            count += 1;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = pos[c];
            }
        }
    }
    count
}

proptest! {
    #[test]
    fn free_reduce_keeps_permutation(w in braid(2, 6, 16)) {
        let r = free_reduce(&w);
        prop_assert_eq!(underlying_permutation(&r), underlying_permutation(&w));
        prop_assert_eq!(closure_components(&r), closure_components(&w));
        prop_assert!(r.letters().windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn conjugation_keeps_components((w, a) in braid_pair(2, 5, 12)) {
        let c = markov_conjugate(&w, &a).unwrap();
        prop_assert_eq!(closure_components(&c), closure_components(&w));
        let (pc, pw) = (underlying_permutation(&c), underlying_permutation(&w));
        prop_assert_eq!(pc.cycle_type(), pw.cycle_type());
    }

    #[test]
    fn permutation_is_homomorphism((a, b) in braid_pair(2, 6, 10)) {
        let ab = a.concat(&b).unwrap();
        prop_assert_eq!(underlying_permutation(&ab), underlying_permutation(&a).then(&underlying_permutation(&b)));
    }

    #[test]
    fn components_match_strand_tracking(w in braid(2, 6, 16)) {
        prop_assert_eq!(closure_components(&w), components_by_hand(&w));
        prop_assert_eq!(underlying_permutation(&w).images().to_vec(), strand_positions(&w));
    }

    #[test]
    fn inverse_cancels(w in braid(2, 6, 16)) {
        prop_assert!(free_reduce(&w.concat(&w.inverse()).unwrap()).is_empty());
    }

    #[test]
    fn stabilization_adds_a_strand(w in braid(2, 5, 10), positive in any::<bool>()) {
        let s = w.stabilize(positive);
        prop_assert_eq!(s.strands(), w.strands() + 1);
        prop_assert_eq!(closure_components(&s), closure_components(&w));
    }
}

#[test]
fn closures_of_small_examples() {
    let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
    assert_eq!(closure_components(&trefoil), 1);
    let hopf = BraidWord::new(2, vec![1, 1]).unwrap();
    assert_eq!(closure_components(&hopf), 2);
    assert_eq!(closure_components(&BraidWord::identity(4).unwrap()), 4);
    assert_eq!(closure_components(&BraidWord::sigma1_p_sigma2_neg_q(1, 1)), 1);
}

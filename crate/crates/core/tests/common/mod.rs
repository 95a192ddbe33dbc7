#![allow(dead_code)]

use knotfield::braid::BraidWord;
use proptest::prelude::*;

pub fn letters(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    let g = (strands - 1) as i32;
    prop::collection::vec((1..=g, any::<bool>()).prop_map(|(k, s)| if s { k } else { -k }), 0..=max_len)
}

pub fn braid_in(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    letters(strands, max_len).prop_map(move |l| BraidWord::new(strands, l).unwrap())
}

/// A random braid on `lo..=hi` strands.
pub fn braid(lo: usize, hi: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (lo..=hi).prop_flat_map(move |n| braid_in(n, max_len))
}

/// Two braids on the same strand count.
pub fn braid_pair(lo: usize, hi: usize, max_len: usize) -> impl Strategy<Value = (BraidWord, BraidWord)> {
    (lo..=hi).prop_flat_map(move |n| (braid_in(n, max_len), braid_in(n, max_len)))
}

/// Stack-based free reduction of signed letters.
pub fn reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = vec![];
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

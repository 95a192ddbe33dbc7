use knotfield::cluster::{
    enumerate_seeds, laurent_report, mutate_matrix, mutate_seed, once_punctured_torus_matrix, polygon_seed,
    surface_seed, ExchangeMatrix, Seed, SurfaceSpec,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn skew(max_rank: usize) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max_rank).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut b = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    b[i][j] = v;
                    b[j][i] = -v;
                }
            }
            ExchangeMatrix::new(b).unwrap()
        })
    })
}

fn is_skew(b: &ExchangeMatrix) -> bool {
    let n = b.size();
    (0..n).all(|i| (0..n).all(|j| b.get(i, j) == -b.get(j, i)))
}

proptest! {
    #[test]
    fn matrix_mutation_is_an_involution(b in skew(6), k in 0usize..6) {
        let k = k % b.size() + 1;
        let once = mutate_matrix(&b, k).unwrap();
        prop_assert!(is_skew(&once));
        prop_assert_eq!(mutate_matrix(&once, k).unwrap(), b);
    }
}

#[test]
fn seed_mutation_is_an_involution_on_1000_random_seeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.gen_range(-3..=3);
                b[i][j] = v;
                b[j][i] = -v;
            }
        }
        let s0 = Seed::initial(ExchangeMatrix::new(b).unwrap());
        // one step away from the initial seed
        let pre = rng.gen_range(1..=n);
        let s = mutate_seed(&s0, pre).unwrap();
        let k = rng.gen_range(1..=n);
        let back = mutate_seed(&mutate_seed(&s, k).unwrap(), k).unwrap();
        assert_eq!(back, s);
    }
}

#[test]
fn torus_matrix_flips_sign_in_every_direction() {
    let b = once_punctured_torus_matrix();
    for k in 1..=3 {
        assert_eq!(mutate_matrix(&b, k).unwrap(), b.negated());
    }
}

fn random_laurent_runs(s0: &Seed, runs: usize, rng: &mut ChaCha8Rng) {
    for _ in 0..runs {
        let depth = rng.gen_range(1..=8);
        let mut dirs: Vec<usize> = vec![];
        while dirs.len() < depth {
            let k = rng.gen_range(1..=s0.rank());
            if dirs.last() != Some(&k) {
                dirs.push(k);
            }
        }
        let r = laurent_report(s0, &dirs).unwrap_or_else(|e| panic!("{dirs:?}: {e}"));
        assert!(r.laurent, "{dirs:?}");
        assert!(r.positive, "{dirs:?}");
    }
}

#[test]
fn laurent_phenomenon_on_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    random_laurent_runs(&surface_seed(&SurfaceSpec::new(1, 1).unwrap()).unwrap(), 500, &mut rng);
    random_laurent_runs(&polygon_seed(5).unwrap(), 500, &mut rng);
}

/// Triangulations of a convex polygon by choosing the apex over a fixed edge.
fn triangulations(d: usize) -> u64 {
    let mut t = vec![0u64; d + 1];
    t[2] = 1;
    for m in 3..=d {
        // vertices 0..m, edge (0, m-1), apex k
        t[m] = (1..m - 1).map(|k| t[k + 1] * t[m - k]).sum();
    }
    t[d]
}

#[test]
fn polygon_seed_counts_are_triangulation_counts() {
    assert_eq!((4..=8).map(triangulations).collect::<Vec<_>>(), vec![2, 5, 14, 42, 132]);
    for d in 4..=7 {
        let c = enumerate_seeds(&polygon_seed(d).unwrap(), 1000).unwrap();
        assert_eq!(c.count as u64, triangulations(d), "d = {d}");
        assert!(c.finite_type);
    }
    let torus = enumerate_seeds(&surface_seed(&SurfaceSpec::new(1, 1).unwrap()).unwrap(), 100).unwrap();
    assert_eq!((torus.count, torus.finite_type), (100, false));
}

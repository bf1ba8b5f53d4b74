//! Seeded random algebras and complexes for property tests.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::bimodcx::{tensor_normalize, ProjBimodComplex, Tensor};
use crate::exactlin::{Field, Scalar, SplitMix64};
use crate::quiveralg::{build_algebra, PathBasisAlgebra, Quiver, Relation};

/// Acyclic quiver on 2 to 4 vertices with 1 to 5 arrows `i → j`, `i < j`, and at most
/// one zero relation of length 2.
pub fn random_algebra(field: Field, seed: u64) -> Arc<PathBasisAlgebra> {
    let mut rng = SplitMix64::new(seed);
    let nv = 2 + rng.below(3);
    let labels: Vec<String> = (0..nv).map(|v| format!("{}", v)).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let mut q = Quiver::new(&refs);
    let na = 1 + rng.below(5);
    for k in 0..na {
        let s = rng.below(nv - 1);
        let t = s + 1 + rng.below(nv - 1 - s);
        q.add_arrow(&format!("a{}", k), s, t);
    }
    let mut rels = Vec::new();
    if rng.below(2) == 0 {
        let pairs: Vec<(usize, usize)> = (0..na)
            .flat_map(|i| (0..na).map(move |j| (i, j)))
            .filter(|&(i, j)| q.arrows[i].target == q.arrows[j].source)
            .collect();
        if !pairs.is_empty() {
            let (i, j) = pairs[rng.below(pairs.len())];
            rels.push(Relation::monomial(field, alloc::vec![i, j]));
        }
    }
    Arc::new(build_algebra(field, &q, &rels, nv).expect("acyclic quivers give finite-dimensional algebras"))
}

fn random_scalar(field: Field, rng: &mut SplitMix64) -> Scalar {
    let mut c = rng.range_i64(-2, 2);
    if c == 0 {
        c = 1;
    }
    Scalar::from_i64(field, c)
}

/// Two-term complex in degrees `c, c+1` with at most `max_summands` summands per degree.
/// All summands sit in Adams degree 0, so only Adams-degree-0 basis elements appear.
pub fn random_two_term(a: &Arc<PathBasisAlgebra>, seed: u64, max_summands: usize, c: i64) -> ProjBimodComplex {
    let mut rng = SplitMix64::new(seed);
    let f = a.field;
    let nv = a.num_vertices();
    let mut x = ProjBimodComplex::new(a.clone());
    let n0 = 1 + rng.below(max_summands.max(1));
    let n1 = 1 + rng.below(max_summands.max(1));
    let src: Vec<usize> = (0..n0).map(|_| x.add_summand(rng.below(nv), rng.below(nv), c, 0)).collect();
    let tgt: Vec<usize> = (0..n1).map(|_| x.add_summand(rng.below(nv), rng.below(nv), c + 1, 0)).collect();
    for &t in &tgt {
        for &s in &src {
            if rng.below(2) == 0 {
                continue;
            }
            let (ts, ss) = (x.summands[t], x.summands[s]);
            let lefts: Vec<usize> = a.corner_indices(ss.left, ts.left).iter().copied().filter(|&i| a.basis[i].adeg == 0).collect();
            let rights: Vec<usize> = a.corner_indices(ts.right, ss.right).iter().copied().filter(|&i| a.basis[i].adeg == 0).collect();
            if lefts.is_empty() || rights.is_empty() {
                continue;
            }
            let mut e: Tensor = Vec::new();
            for _ in 0..1 + rng.below(2) {
                e.push((lefts[rng.below(lefts.len())], rights[rng.below(rights.len())], random_scalar(f, &mut rng)));
            }
            x.add_entry(t, s, &tensor_normalize(f, e));
        }
    }
    x
}

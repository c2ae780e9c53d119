use super::{TVertex, TranslationQuiver};
use crate::reps::{dimvec_add, DimVec};

/// Rank-`r` stable tube cut at quasi-length `window`; vertex `(n, l)` has id
/// `(n,l)` and the top layer is boundary.
pub fn build_stable_tube(r: usize, window: usize) -> TranslationQuiver {
    let mouth: Vec<(String, Option<DimVec>)> = (0..r).map(|n| (format!("({n},1)"), None)).collect();
    tube_with_names(&mouth, window, |n, l| format!("({n},{l})"))
}

/// Tube whose mouth is `mouth[0], ..., mouth[r-1]` with
/// `tau mouth[n] = mouth[n-1]`. Vertex `(n, l)` is `mouth[n]^l` and its label
/// is the sum of the labels of `mouth[n], ..., mouth[n+l-1]`.
pub fn build_labeled_tube(mouth: &[(String, DimVec)], window: usize) -> TranslationQuiver {
    let m: Vec<(String, Option<DimVec>)> = mouth.iter().map(|(id, d)| (id.clone(), Some(d.clone()))).collect();
    let names: Vec<String> = mouth.iter().map(|(id, _)| id.clone()).collect();
    tube_with_names(&m, window, |n, l| if l == 1 { names[n].clone() } else { format!("{}^{l}", names[n]) })
}

fn tube_with_names(
    mouth: &[(String, Option<DimVec>)],
    window: usize,
    name: impl Fn(usize, usize) -> String,
) -> TranslationQuiver {
    let r = mouth.len();
    assert!(r >= 1 && window >= 1, "rank and window must be positive");
    let mut g = TranslationQuiver::new();
    let idx = |n: usize, l: usize| n * window + (l - 1);
    for n in 0..r {
        for l in 1..=window {
            let mut v = TVertex::new(name(n, l));
            v.boundary = l == window;
            v.layer = Some(l);
            v.label = mouth[0].1.as_ref().map(|_| {
                (0..l).fold(DimVec::new(), |acc, k| dimvec_add(&acc, mouth[(n + k) % r].1.as_ref().unwrap()))
            });
            g.add_vertex(v).expect("distinct tube ids");
        }
    }
    for n in 0..r {
        for l in 1..window {
            g.add_arrow(idx(n, l), idx(n, l + 1));
            g.add_arrow(idx(n, l + 1), idx((n + 1) % r, l));
        }
        for l in 1..=window {
            g.set_tau(idx(n, l), idx((n + r - 1) % r, l));
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::dimvec_unit;

    #[test]
    fn tube_counts_and_mesh() {
        for r in 1..=6 {
            for l in 1..=8 {
                let g = build_stable_tube(r, l);
                assert_eq!(g.len(), r * l);
                assert_eq!(g.arrow_count(), 2 * r * (l - 1));
                g.validate().unwrap();
            }
        }
    }

    #[test]
    fn rank_one_mouth_is_tau_fixed() {
        let g = build_stable_tube(1, 1);
        assert_eq!(g.tau(0), Some(0));
    }

    #[test]
    fn labels_add_along_rays() {
        let mouth = vec![("a".to_string(), dimvec_unit("1")), ("b".to_string(), dimvec_unit("2"))];
        let g = build_labeled_tube(&mouth, 4);
        let x = g.index("a^3").unwrap();
        assert_eq!(g.label(x).unwrap(), &DimVec::from([("1".to_string(), 2), ("2".to_string(), 1)]));
        assert_eq!(g.tau(g.index("b").unwrap()), g.index("a"));
    }
}

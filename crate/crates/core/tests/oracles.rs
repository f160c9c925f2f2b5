//! Checks the library against a from-scratch root-system model: roots are
//! integer vectors, group elements act linearly, and lengths count inverted
//! positive roots. Nothing here calls the library's combinatorial shortcuts.

use std::collections::{BTreeSet, VecDeque};

use qkchev::qbg::{edge_kind_criterion, EdgeKind};
use qkchev::weyl::bruhat_leq;
use qkchev::{Family, GroupDescriptor, Parabolic, PositiveRoot, WeylElement};

type Vector = Vec<i64>;

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn positive_roots(family: Family, n: usize) -> Vec<Vector> {
    let unit = |i: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(unit(i).iter().zip(unit(j)).map(|(a, b)| a - b).collect());
            if family == Family::C {
                out.push(unit(i).iter().zip(unit(j)).map(|(a, b)| a + b).collect());
            }
        }
        if family == Family::C {
            out.push(unit(i).iter().map(|x| 2 * x).collect());
        }
    }
    out
}

/// A signed permutation matrix, stored as images of basis vectors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Linear(Vec<(usize, i64)>);

impl Linear {
    fn identity(n: usize) -> Self {
        Linear((0..n).map(|i| (i, 1)).collect())
    }

    fn from_window(w: &WeylElement) -> Self {
        Linear(w.window().iter().map(|&x| ((x.unsigned_abs() - 1) as usize, x.signum() as i64)).collect())
    }

    fn to_window(&self) -> Vec<i32> {
        self.0.iter().map(|&(i, s)| (i as i32 + 1) * s as i32).collect()
    }

    fn apply(&self, v: &[i64]) -> Vector {
        let mut out = vec![0; v.len()];
        for (i, &x) in v.iter().enumerate() {
            let (j, s) = self.0[i];
            out[j] += s * x;
        }
        out
    }

    /// `self ∘ other`.
    fn then(&self, other: &Linear) -> Linear {
        Linear(other.0.iter().map(|&(j, s)| (self.0[j].0, self.0[j].1 * s)).collect())
    }

    /// The reflection in the hyperplane orthogonal to `beta`.
    fn reflection(beta: &[i64]) -> Linear {
        let n = beta.len();
        let norm = dot(beta, beta);
        Linear(
            (0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    let c = 2 * dot(&e, beta) / norm;
                    let img: Vec<i64> = e.iter().zip(beta).map(|(x, b)| x - c * b).collect();
                    let j = img.iter().position(|&x| x != 0).unwrap();
                    (j, img[j])
                })
                .collect(),
        )
    }

    fn length(&self, roots: &[Vector]) -> usize {
        roots.iter().filter(|b| !is_positive(&self.apply(b))).count()
    }
}

fn simple_roots(family: Family, n: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = -1;
            v
        })
        .collect();
    if family == Family::C {
        let mut v = vec![0; n];
        v[n - 1] = 2;
        out.push(v);
    }
    out
}

/// `2ρ`, the sum of the positive roots.
fn two_rho(family: Family, n: usize) -> Vector {
    let roots = positive_roots(family, n);
    (0..n).map(|i| roots.iter().map(|r| r[i]).sum()).collect()
}

fn lib_root(family: Family, n: usize, v: &[i64]) -> PositiveRoot {
    GroupDescriptor::new(family, n)
        .unwrap()
        .positive_roots()
        .into_iter()
        .find(|r| r.vector(n) == v)
        .expect("library has the same positive roots")
}

fn groups() -> Vec<(Family, usize)> {
    vec![(Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::A, 5), (Family::C, 2), (Family::C, 3)]
}

fn all_elements(family: Family, n: usize) -> Vec<Linear> {
    let gens: Vec<Linear> = simple_roots(family, n).iter().map(|a| Linear::reflection(a)).collect();
    generate(Linear::identity(n), &gens)
}

fn generate(start: Linear, gens: &[Linear]) -> Vec<Linear> {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[test]
fn group_orders_and_positive_roots() {
    for (family, n) in groups() {
        let desc = GroupDescriptor::new(family, n).unwrap();
        assert_eq!(all_elements(family, n).len(), desc.order());
        assert_eq!(desc.elements().len(), desc.order());
        let ours: BTreeSet<Vector> = positive_roots(family, n).into_iter().collect();
        let theirs: BTreeSet<Vector> = desc.positive_roots().iter().map(|r| r.vector(n)).collect();
        assert_eq!(ours, theirs, "{family}{n}");
    }
}

#[test]
fn lengths_count_inverted_roots() {
    for (family, n) in groups() {
        let roots = positive_roots(family, n);
        for w in GroupDescriptor::new(family, n).unwrap().elements() {
            assert_eq!(w.length(), Linear::from_window(&w).length(&roots), "{family}{n} {w}");
        }
    }
}

#[test]
fn reflections_and_composition_agree() {
    for (family, n) in groups() {
        let desc = GroupDescriptor::new(family, n).unwrap();
        let elements = desc.elements();
        for w in &elements {
            let lw = Linear::from_window(w);
            for beta in positive_roots(family, n) {
                let expected = lw.then(&Linear::reflection(&beta)).to_window();
                let got = w.apply_reflection(&lib_root(family, n, &beta));
                assert_eq!(got.window(), expected.as_slice());
            }
            let inv = w.inverse();
            assert!(w.compose(&inv).is_identity());
        }
        for (u, v) in elements.iter().zip(elements.iter().rev()) {
            let expected = Linear::from_window(u).then(&Linear::from_window(v)).to_window();
            assert_eq!(u.compose(v).window(), expected.as_slice());
        }
    }
}

#[test]
fn edge_criterion_matches_root_system_definition() {
    for (family, n) in groups() {
        let roots = positive_roots(family, n);
        let two_rho = two_rho(family, n);
        for w in GroupDescriptor::new(family, n).unwrap().elements() {
            let lw = Linear::from_window(&w);
            let l = lw.length(&roots) as i64;
            for beta in &roots {
                let coroot_pairing = dot(&two_rho, beta) / dot(beta, beta);
                let lv = lw.then(&Linear::reflection(beta)).length(&roots) as i64;
                let expected = if lv == l + 1 {
                    EdgeKind::Bruhat
                } else if lv == l + 1 - 2 * coroot_pairing {
                    EdgeKind::Quantum
                } else {
                    EdgeKind::None
                };
                let root = lib_root(family, n, beta);
                assert_eq!(edge_kind_criterion(&w, &root), expected, "{family}{n} w={w} β={root}");
                assert_eq!(root.rho_pairing(family, n), coroot_pairing);
            }
        }
    }
}

#[test]
fn minimal_coset_reps_by_exhaustion() {
    for (family, n) in groups() {
        let desc = GroupDescriptor::new(family, n).unwrap();
        let roots = positive_roots(family, n);
        let simple = simple_roots(family, n);
        for k in desc.index_set() {
            let p = Parabolic::maximal(desc, k).unwrap();
            let gens: Vec<Linear> = (1..=simple.len())
                .filter(|&i| i != k)
                .map(|i| Linear::reflection(&simple[i - 1]))
                .collect();
            let wj = generate(Linear::identity(n), &gens);
            for w in desc.elements().iter().step_by(3) {
                let lw = Linear::from_window(w);
                let best = wj.iter().map(|u| lw.then(u)).min_by_key(|x| x.length(&roots)).unwrap();
                let rep = p.min_coset_rep(w);
                assert_eq!(rep.window(), best.to_window().as_slice(), "{family}{n} k={k} w={w}");
                assert_eq!(p.is_minimal(w), w == &rep);
            }
        }
    }
}

/// Type A Bruhat order by the tableau criterion on sorted prefixes.
#[test]
fn bruhat_order_by_sorted_prefixes() {
    for n in 2..=4 {
        let elements = GroupDescriptor::new(Family::A, n).unwrap().elements();
        for u in &elements {
            for v in &elements {
                let tableau = (1..=n).all(|i| {
                    let mut a = u.window()[..i].to_vec();
                    let mut b = v.window()[..i].to_vec();
                    a.sort_unstable();
                    b.sort_unstable();
                    a.iter().zip(&b).all(|(x, y)| x <= y)
                });
                assert_eq!(bruhat_leq(u, v), tableau, "{u} ≤ {v}");
            }
        }
    }
}

//! Generators for the graph families used throughout the tests and the CLI.
//!
//! Hub graphs come in an open form, where branches end in an open end, and
//! a closed form, where each branch ends at its own leaf vertex. Removing
//! leaves from the closed form gives the open form.

use crate::graph::{EdgeSpec, Graph};

/// One vertex `v` with one loop `a`.
pub fn s1_min() -> Graph {
    Graph::build(["v"], vec![EdgeSpec::closed("a", "v", "v")]).expect("valid")
}

/// Cycle with `n ≥ 1` vertices `v0, …` and edges `e0, …`, edge `ei` running
/// from `vi` to `v(i+1)`.
pub fn s1_sd(n: usize) -> Graph {
    assert!(n >= 1, "a cycle needs a vertex");
    let specs = (0..n)
        .map(|i| EdgeSpec::closed(format!("e{i}"), &format!("v{i}"), &format!("v{}", (i + 1) % n)))
        .collect();
    Graph::build((0..n).map(|i| format!("v{i}")), specs).expect("valid")
}

/// Centre `c` joined to leaves `x`, `y`, `z` by `e1`, `e2`, `e3`.
pub fn y() -> Graph {
    let specs = ["x", "y", "z"]
        .iter()
        .enumerate()
        .map(|(i, leaf)| EdgeSpec::closed(format!("e{}", i + 1), "c", leaf))
        .collect();
    Graph::build(["c", "x", "y", "z"], specs).expect("valid")
}

#[allow(clippy::too_many_arguments)]
fn hub(specs: &mut Vec<EdgeSpec>, leaves: &mut Vec<String>, centre: &str, branch: &str, branches: usize, lp: &str, loops: usize, closed: bool) {
    for i in 1..=branches {
        let id = format!("{branch}{i}");
        if closed {
            let leaf = format!("{centre}{id}");
            specs.push(EdgeSpec::closed(id, centre, &leaf));
            leaves.push(leaf);
        } else {
            specs.push(EdgeSpec::new(id, Some(centre), None));
        }
    }
    for i in 1..=loops {
        specs.push(EdgeSpec::closed(format!("{lp}{i}"), centre, centre));
    }
}

/// Hub `v` with branches `b1..bk` and loops `l1..ll`.
pub fn w(k: usize, l: usize, closed: bool) -> Graph {
    let (mut specs, mut leaves) = (Vec::new(), Vec::new());
    hub(&mut specs, &mut leaves, "v", "b", k, "l", l, closed);
    leaves.push("v".into());
    Graph::build(leaves, specs).expect("valid")
}

/// Two hubs joined by `x` parallel edges `e1..ex`: hub `v` carries branches
/// `b1..bk` and loops `a1..al`, hub `w` branches `c1..cp` and loops
/// `d1..dq`.
pub fn xb(x: usize, k: usize, l: usize, p: usize, q: usize, closed: bool) -> Graph {
    let (mut specs, mut vertices) = (Vec::new(), vec!["v".to_string(), "w".to_string()]);
    hub(&mut specs, &mut vertices, "v", "b", k, "a", l, closed);
    hub(&mut specs, &mut vertices, "w", "c", p, "d", q, closed);
    for i in 1..=x {
        specs.push(EdgeSpec::closed(format!("e{i}"), "v", "w"));
    }
    Graph::build(vertices, specs).expect("valid")
}

/// Path with `n` edges through vertices `p0..pn`.
pub fn path(n: usize) -> Graph {
    let specs = (0..n).map(|i| EdgeSpec::closed(format!("s{i}"), &format!("p{i}"), &format!("p{}", i + 1))).collect();
    Graph::build((0..=n).map(|i| format!("p{i}")), specs).expect("valid")
}

/// Two vertices `s`, `t` joined by `n` parallel edges.
pub fn theta(n: usize) -> Graph {
    let specs = (1..=n).map(|i| EdgeSpec::closed(format!("e{i}"), "s", "t")).collect();
    Graph::build(["s", "t"], specs).expect("valid")
}

/// `½(k+ℓ)(k+3ℓ−3)`, the number that governs the braid group ranks of the
/// one-hub graphs.
pub fn n_kl(k: i64, l: i64) -> i64 {
    (k + l) * (k + 3 * l - 3) / 2
}

/// Extra free rank contributed by joining two hubs with `x` parallel edges.
pub fn xm(x: i64, k: i64, l: i64, p: i64, q: i64) -> i64 {
    n_kl(k, l) + n_kl(p, q) + x * (k + l + p + q) + x * (x - 1) / 2
}

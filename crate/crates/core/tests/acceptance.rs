//! Acceptance suite: one status line per criterion. All comparisons are
//! exact integer matches; the only numeric limits are the ones pinned below.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use graphconf::abrams::{abrams_complex, check_abrams_conditions, cubical_chain_complex, quotient as abrams_quotient};
use graphconf::cells::{configuration_cells, Permutation};
use graphconf::families::{n_kl, path, s1_min, s1_sd, theta, w, xb, xm, y};
use graphconf::homology::{chain_complex, homology, smith_normal_form_i64, HomologyResult};
use graphconf::model::ConfigurationModel;
use graphconf::nerve::{collapse_free_faces, SemiSimplicialSet};
use graphconf::pi1::{abelianization, presentation, simplify};
use graphconf::reduced::{build_reduced, classify_2cells, glued_chain_complex, type_counts, Tag};
use graphconf::report::betti_agree;
use graphconf::{EdgeSpec, Graph};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random graphs drawn for the dimension bound.
const RANDOM_GRAPHS: usize = 200;
const RANDOM_SEED: u64 = 0x5eed;
/// Violations of the dimension bound tolerated.
const MAX_DIMENSION_VIOLATIONS: usize = 0;
/// Largest Abrams complex enumerated for three points.
const ABRAMS_CELL_CAP: usize = 100_000;
/// Random matrices checked against determinantal divisors.
const SNF_SAMPLES: usize = 500;
/// Configuration cell cap for the exhaustive structural checks.
const STRUCTURE_CELL_CAP: usize = 20_000;

#[derive(PartialEq)]
enum Status {
    Pass,
    Fail,
    Unattainable,
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail }, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn model(g: &Graph, k: usize) -> ConfigurationModel {
    ConfigurationModel::new(g, k).expect("model builds")
}

fn hom(s: &SemiSimplicialSet) -> HomologyResult {
    homology(&chain_complex(s)).expect("boundary squares to zero")
}

/// Betti numbers from the library, confirmed by rank modulo a prime.
fn betti(s: &SemiSimplicialSet) -> Result<Vec<usize>, String> {
    let h = hom(s);
    let oracle = common::nerve_betti(s, common::PRIME);
    if h.betti != oracle {
        return Err(format!("library betti {:?} but rank mod p gives {:?}", h.betti, oracle));
    }
    Ok(h.betti)
}

fn criterion_1() -> Outcome {
    let m = model(&s1_min(), 2);
    let s = m.complex();
    let h = hom(s);
    let b = match betti(s) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let ok = s.fvector() == [4, 4] && s.dimension() == Ok(1) && b == [1, 1] && h.is_torsion_free();
    check(ok, format!("f-vector {:?}, dimension {:?}, betti {:?}, torsion-free {}", s.fvector(), s.dimension(), b, h.is_torsion_free()))
}

fn criterion_2() -> Outcome {
    let m = model(&s1_sd(2), 2);
    let s = m.complex();
    match betti(s) {
        Ok(b) => check(s.dimension() == Ok(2) && b == [1, 1, 0], format!("dimension {:?}, betti {b:?}", s.dimension())),
        Err(e) => fail(e),
    }
}

fn criterion_3() -> Outcome {
    let m = model(&y().remove_leaves(), 2);
    let s = m.complex();
    let c = collapse_free_faces(s);
    match (betti(s), betti(&c)) {
        (Ok(b), Ok(bc)) => check(
            s.fvector() == [18, 18] && b == [1, 1] && c.fvector() == [12, 12] && bc == b,
            format!("f-vector {:?}, betti {b:?}, collapsed f-vector {:?}", s.fvector(), c.fvector()),
        ),
        (Err(e), _) | (_, Err(e)) => fail(e),
    }
}

fn criterion_4() -> Outcome {
    let hexagon = abrams_complex(&s1_sd(3), 2).unwrap();
    let hb = homology(&cubical_chain_complex(&hexagon)).unwrap().betti;
    let empty = abrams_complex(&s1_min(), 2).unwrap();
    let pair = abrams_complex(&s1_sd(2), 2).unwrap();
    let pb = homology(&cubical_chain_complex(&pair)).unwrap().betti;
    let ok = hexagon.fvector() == [6, 6] && hb == [1, 1] && empty.fvector().is_empty() && pair.fvector() == [2] && pb == [2];
    check(
        ok,
        format!(
            "3-cycle f-vector {:?} betti {hb:?}; minimal circle {:?}; 2-cycle f-vector {:?} betti {pb:?}",
            hexagon.fvector(),
            empty.fvector(),
            pair.fvector()
        ),
    )
}

/// Observed values on a graph whose two-point configuration space is a pair
/// of contractible pieces (an interval).
fn interval_shape(ordered: &[usize], unordered: &[usize]) -> bool {
    betti_agree(ordered, &[2]) && betti_agree(unordered, &[1])
}

fn criterion_5() -> Vec<Outcome> {
    let mut failures = Vec::new();
    let mut outside = Vec::new();
    let mut checked = 0;
    for k in 0..=3usize {
        for l in 0..=3usize {
            if k + l == 0 {
                continue;
            }
            let g = w(k, l, false);
            let m = model(&g, 2);
            let q = m.unordered().unwrap();
            let (b, bq) = match (betti(m.complex()), betti(&q)) {
                (Ok(b), Ok(bq)) => (b, bq),
                (Err(e), _) | (_, Err(e)) => {
                    failures.push(format!("W{k}{l}: {e}"));
                    continue;
                }
            };
            let (ki, li) = (k as i64, l as i64);
            let n = n_kl(ki, li);
            let b1 = b.get(1).copied().unwrap_or(0) as i64;
            let bq1 = bq.get(1).copied().unwrap_or(0) as i64;
            if 2 * n + 1 < 0 {
                if !interval_shape(&b, &bq) || bq1 != n + 1 {
                    failures.push(format!("W{k}{l}: interval case observed {b:?} / {bq:?}"));
                }
                outside.push(format!("W{k}{l}: 2n+1 = {}, observed b0 = {}, b1 = {b1}", 2 * n + 1, b[0]));
            } else if b1 != 2 * n + 1 || bq1 != n + 1 {
                failures.push(format!("W{k}{l}: b1 {b1} / {bq1}, expected {} / {}", 2 * n + 1, n + 1));
            }
            let r = build_reduced(&g).unwrap();
            let f = r.complex.fvector();
            let fv = |i: usize| f.get(i).copied().unwrap_or(0) as i64;
            let (v, e) = (2 * ki * li + ki * ki + ki + li * li + 3 * li, 6 * ki * li + 2 * ki * ki - 2 * ki + 4 * li * li);
            let chi = -(ki + li) * (ki + 3 * li - 3);
            if fv(0) != v || fv(1) != e || fv(2) != 0 || r.complex.euler_characteristic() != chi {
                failures.push(format!("W{k}{l}: reduced f-vector {f:?}, expected ({v}, {e}, 0) with χ {chi}"));
            }
            let rb = common::glued_betti(&r.complex, common::PRIME);
            if !betti_agree(&rb, &b) || !betti_agree(&homology(&glued_chain_complex(&r.complex)).unwrap().betti, &b) {
                failures.push(format!("W{k}{l}: reduced betti {rb:?} vs model {b:?}"));
            }
            let counts = type_counts(&classify_2cells(&g).unwrap());
            let c = |t: Tag| counts.get(&t).copied().unwrap_or(0);
            if (c(Tag::LLSame), c(Tag::LLDistinct), c(Tag::LB), c(Tag::BBSame), c(Tag::BBDistinct))
                != (l, l * l.saturating_sub(1), 2 * k * l, k, k * k.saturating_sub(1))
                || c(Tag::LC) + c(Tag::BC) + c(Tag::CCSame) + c(Tag::CCDistinct) != 0
            {
                failures.push(format!("W{k}{l}: 2-cell type counts {counts:?}"));
            }
            checked += 1;
        }
    }
    let main = if failures.is_empty() {
        pass(format!(
            "{checked} graphs: b1 formulas where the closed form is nonnegative, quotient b1, reduced f-vector, χ, reduced betti, 2-cell type counts"
        ))
    } else {
        fail(failures.join("; "))
    };
    let degenerate = Outcome {
        status: Status::Unattainable,
        detail: format!(
            "interval graphs, where the ordered closed form is negative: {}; the observed values are those of two contractible components",
            outside.join("; ")
        ),
    };
    vec![main, degenerate]
}

fn criterion_6() -> Vec<Outcome> {
    let mut failures = Vec::new();
    let mut outside = Vec::new();
    let mut checked = 0;
    let mut grids = 0;
    for x in 1..=2usize {
        for k in 0..=2usize {
            for l in 0..=2usize {
                for p in 0..=2usize {
                    for q in 0..=2usize {
                        let name = format!("x{x} k{k} l{l} p{p} q{q}");
                        let g = xb(x, k, l, p, q, false);
                        let m = model(&g, 2);
                        let quo = m.unordered().unwrap();
                        let (b, bq) = match (betti(m.complex()), betti(&quo)) {
                            (Ok(b), Ok(bq)) => (b, bq),
                            (Err(e), _) | (_, Err(e)) => {
                                failures.push(format!("{name}: {e}"));
                                continue;
                            }
                        };
                        let mm = xm(x as i64, k as i64, l as i64, p as i64, q as i64);
                        let lq = (l + q) as i64;
                        let (ord, un) = (2 * lq + 2 * mm - 1, lq + mm);
                        let b1 = b.get(1).copied().unwrap_or(0) as i64;
                        let bq1 = bq.get(1).copied().unwrap_or(0) as i64;
                        if ord < 0 {
                            if !interval_shape(&b, &bq) {
                                failures.push(format!("{name}: interval case observed {b:?} / {bq:?}"));
                            }
                            outside.push(format!("{name}: formulas {ord} / {un}, observed b1 {b1} / {bq1}, b0 {} / {}", b[0], bq[0]));
                        } else if b1 != ord || bq1 != un {
                            failures.push(format!("{name}: b1 {b1} / {bq1}, expected {ord} / {un}"));
                        }
                        let r = match build_reduced(&g.remove_leaves()) {
                            Ok(r) => r,
                            Err(e) => {
                                if ord >= 0 {
                                    failures.push(format!("{name}: reduced model: {e}"));
                                }
                                checked += 1;
                                continue;
                            }
                        };
                        if !betti_agree(&common::glued_betti(&r.complex, common::PRIME), &b) {
                            failures.push(format!("{name}: reduced betti differs from model {b:?}"));
                        }
                        if l > 0 && q > 0 {
                            let a: Vec<String> = (1..=l).map(|i| format!("a{i}")).collect();
                            let d: Vec<String> = (1..=q).map(|i| format!("d{i}")).collect();
                            let a: Vec<&str> = a.iter().map(String::as_str).collect();
                            let d: Vec<&str> = d.iter().map(String::as_str).collect();
                            for (first, second) in [(&a, &d), (&d, &a)] {
                                let t = r.grid(first, second).unwrap();
                                let tb = homology(&glued_chain_complex(&t)).unwrap().betti;
                                let expected = [1, first.len() + second.len(), first.len() * second.len()];
                                if tb != expected || common::glued_betti(&t, common::PRIME) != expected {
                                    failures.push(format!("{name}: grid {}x{} betti {tb:?}", first.len(), second.len()));
                                }
                                grids += 1;
                            }
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    let main = if failures.is_empty() {
        pass(format!(
            "{checked} graphs: ordered and quotient b1 where the closed form is nonnegative, reduced betti; {grids} grid subcomplexes with betti (1, ℓ+q, ℓq)"
        ))
    } else {
        fail(failures.join("; "))
    };
    let degenerate = Outcome {
        status: Status::Unattainable,
        detail: format!("interval graphs, where the ordered closed form is negative: {}", outside.join("; ")),
    };
    vec![main, degenerate]
}

fn random_graph(rng: &mut StdRng) -> Graph {
    loop {
        let nv = rng.gen_range(1..=3usize);
        let ne = rng.gen_range(0..=4usize);
        let vs: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        let end = |rng: &mut StdRng| -> Option<usize> { rng.gen_bool(0.85).then(|| rng.gen_range(0..nv)) };
        let specs: Vec<EdgeSpec> = (0..ne)
            .map(|i| {
                let (a, b) = (end(rng), end(rng));
                EdgeSpec::new(format!("e{i}"), a.map(|a| vs[a].as_str()), b.map(|b| vs[b].as_str()))
            })
            .collect();
        let g = Graph::build(vs.clone(), specs).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

#[allow(clippy::absurd_extreme_comparisons)]
fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED);
    let mut violations = Vec::new();
    let mut tight = 0;
    for _ in 0..RANDOM_GRAPHS {
        let g = random_graph(&mut rng);
        for k in [2, 3] {
            let m = model(&g, k);
            let Ok(d) = m.complex().dimension() else { continue };
            let bound = k.min(g.vertex_count());
            if d > bound {
                violations.push(format!("{:?} k={k}: dimension {d} > {bound}", g.to_json()));
            }
            tight += (d == bound) as usize;
        }
    }
    check(
        violations.len() <= MAX_DIMENSION_VIOLATIONS,
        format!("{RANDOM_GRAPHS} graphs x k in {{2,3}}: {} violations, bound attained {tight} times {}", violations.len(), violations.join("; ")),
    )
}

fn criterion_8() -> Outcome {
    let graphs = [("Y", y()), ("W11", w(1, 1, true)), ("W21", w(2, 1, true)), ("theta3", theta(3)), ("2-cycle", s1_sd(2))];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, g) in &graphs {
        for k in [2usize, 3] {
            let fine = g.subdivide(k + 1).unwrap();
            let a = abrams_complex(&fine, k).unwrap();
            if k == 3 && a.cell_count() >= ABRAMS_CELL_CAP {
                lines.push(format!("{name} k=3 skipped ({} cells)", a.cell_count()));
                continue;
            }
            let cond = check_abrams_conditions(&fine, k).unwrap();
            let ab = homology(&cubical_chain_complex(&a)).unwrap().betti;
            let mb = match betti(model(g, k).complex()) {
                Ok(b) => b,
                Err(e) => return fail(e),
            };
            let open = match betti(model(&g.remove_leaves(), k).complex()) {
                Ok(b) => b,
                Err(e) => return fail(e),
            };
            let agree = cond.ok && betti_agree(&ab, &mb) && betti_agree(&open, &mb);
            ok &= agree;
            lines.push(format!("{name} k={k}: {}{mb:?}", if agree { "" } else { "MISMATCH " }));
        }
    }
    check(ok, format!("Abrams, closed model and leaf-removed model agree: {}", lines.join(", ")))
}

fn structure_corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("S1", s1_min()),
        ("2-cycle", s1_sd(2)),
        ("3-cycle", s1_sd(3)),
        ("Y", y()),
        ("Y open", y().remove_leaves()),
        ("W11 open", w(1, 1, false)),
        ("W21", w(2, 1, true)),
        ("theta3", theta(3)),
        ("path2", path(2)),
        ("xb", xb(1, 1, 1, 0, 1, false)),
    ]
}

fn criterion_9() -> Outcome {
    let mut problems = Vec::new();
    let mut complexes = 0;
    for (name, g) in structure_corpus() {
        for k in 1..=3usize {
            let cells = configuration_cells(&g, k);
            if cells.len() > STRUCTURE_CELL_CAP {
                continue;
            }
            for sigma in Permutation::all(k).iter().filter(|s| !s.is_identity()) {
                if let Some(c) = cells.iter().find(|c| sigma.act_cell(c).unwrap() == **c) {
                    problems.push(format!("{name} k={k}: {sigma:?} fixes {}", c.label(&g)));
                }
            }
            let m = model(&g, k);
            let s = m.complex();
            if !s.check_identities() {
                problems.push(format!("{name} k={k}: face identities"));
            }
            let q = m.unordered().unwrap();
            let c = collapse_free_faces(s);
            for (what, x) in [("model", s), ("quotient", &q), ("collapsed", &c)] {
                complexes += 1;
                if chain_complex(x).check().is_err() {
                    problems.push(format!("{name} k={k} {what}: ∂∂ ≠ 0"));
                }
            }
            let factorial: i64 = (1..=k as i64).product();
            if s.euler_characteristic() != factorial * q.euler_characteristic() {
                problems.push(format!("{name} k={k}: χ {} vs quotient {}", s.euler_characteristic(), q.euler_characteristic()));
            }
            let (h, hc) = (hom(s), hom(&c));
            let t = |h: &HomologyResult| h.torsion.iter().flatten().cloned().collect::<Vec<_>>();
            if !betti_agree(&h.betti, &hc.betti) || t(&h) != t(&hc) {
                problems.push(format!("{name} k={k}: collapse changed homology"));
            }
            if k == 1 && g.is_closed() && !betti_agree(&h.betti, &[g.components().len(), g.first_betti()]) {
                problems.push(format!("{name}: one-point model betti {:?}", h.betti));
            }
            for (what, x, hx) in [("model", s, &h), ("quotient", &q, &hom(&q))] {
                if hx.betti.first() != Some(&1) {
                    continue;
                }
                let (rank, torsion) = abelianization(&simplify(&presentation(x).unwrap()));
                let t1: Vec<u64> = torsion.iter().map(|t| u64::try_from(t).unwrap()).collect();
                if rank != hx.betti(1) || t1 != hx.torsion_u64().get(1).cloned().unwrap_or_default() {
                    problems.push(format!("{name} k={k} {what}: abelianization ({rank}, {t1:?}) vs H1"));
                }
            }
        }
        if g.is_closed() {
            let a = abrams_complex(&g, 2).unwrap();
            complexes += 2;
            if cubical_chain_complex(&a).check().is_err() || abrams_quotient(&a).unwrap().check().is_err() {
                problems.push(format!("{name}: Abrams ∂∂ ≠ 0"));
            }
        }
        if let Ok(r) = build_reduced(&g) {
            complexes += 1;
            if glued_chain_complex(&r.complex).check().is_err() {
                problems.push(format!("{name}: reduced ∂∂ ≠ 0"));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(RANDOM_SEED + 1);
    for _ in 0..SNF_SAMPLES {
        let (r, c) = (rng.gen_range(1..=4usize), rng.gen_range(1..=4usize));
        let m: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let ours = smith_normal_form_i64(&m).factors;
        let brute: Vec<BigInt> = common::brute_force_factors(&m);
        if ours != brute {
            problems.push(format!("SNF of {m:?}: {ours:?} vs {brute:?}"));
        }
    }
    check(
        problems.is_empty(),
        format!("{complexes} complexes, free actions up to k=3, {SNF_SAMPLES} random Smith forms {}", problems.join("; ")),
    )
}

type Criterion = fn() -> Vec<Outcome>;

fn main() -> ExitCode {
    let suite: Vec<(&str, Criterion)> = vec![
        ("1", || vec![criterion_1()]),
        ("2", || vec![criterion_2()]),
        ("3", || vec![criterion_3()]),
        ("4", || vec![criterion_4()]),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", || vec![criterion_7()]),
        ("8", || vec![criterion_8()]),
        ("9", || vec![criterion_9()]),
    ];
    let mut failed = 0;
    for (id, run) in suite {
        let start = Instant::now();
        let outcomes = run();
        let secs = start.elapsed().as_secs_f64();
        for (i, o) in outcomes.iter().enumerate() {
            let tag = match o.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Unattainable => "UNATTAINABLE",
            };
            let label = if outcomes.len() > 1 { format!("{id}{}", (b'a' + i as u8) as char) } else { id.to_string() };
            println!("criterion {label}: {tag} ({secs:.2}s) {}", o.detail);
            failed += (o.status == Status::Fail) as usize;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

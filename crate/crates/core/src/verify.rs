//! The verification matrix: each case recomputes one claim about the groups
//! and graphs from scratch and compares it with the expected value.
//!
//! Reports are deterministic. Runtimes are kept on the case but are not part
//! of the serialized report.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bicayley::{
    admissible_k, build_sigma, canonical_isomorphism, canonicalize_connection_set, sigma_connection_set, sigma_k_isomorphism,
    BiCayleyError, BiCayleyGraph, ConnectionTriple,
};
use crate::graphalg::{
    are_isomorphic, classify_with_group, count_automorphisms_by_extension, is_edge_transitive,
    is_two_power_times_three, quotient_by_orbits, s_arc_count, search_automorphisms, PermGroup, TransitivityReport,
};
use crate::pgroup::{oracle, GroupAutomorphism, GroupElement, GroupParams};
use crate::residue::{hensel_lift, is_prime, solve_k};

/// Seed for every randomized case, so reports are reproducible.
pub const SEED: u64 = 0x5eed_b1ca;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Instances up to 500 vertices.
    Fast,
    /// Everything, including the 1458- and 4802-vertex graphs.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseParams {
    pub p: u64,
    pub t: u32,
    pub s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

pub type Values = BTreeMap<&'static str, Value>;

/// One row of the report. `pass` holds exactly when `observed == expected`.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<CaseParams>,
    /// Where the expected values come from.
    pub source: &'static str,
    pub expected: Values,
    pub observed: Values,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
    pub pass: bool,
    #[serde(skip)]
    pub runtime: Duration,
}

struct Case {
    name: String,
    params: Option<CaseParams>,
    source: &'static str,
    run: Box<dyn Fn() -> (Values, Values, String)>,
}

fn values(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Values {
    pairs.into_iter().collect()
}

fn params(p: u64, t: u32, s: u32) -> GroupParams {
    GroupParams::new(p, t, s).expect("suite parameters are valid")
}

// ---------------------------------------------------------------- group law

/// Compare the full multiplication table with the rewriting oracle; returns
/// the number of disagreeing products.
pub fn group_law_mismatches(h: &GroupParams) -> usize {
    let elems: Vec<GroupElement> = h.elements().collect();
    elems
        .iter()
        .flat_map(|g| elems.iter().map(move |k| (g, k)))
        .filter(|(g, k)| h.multiply(g, k) != oracle::multiply(h, g, k))
        .count()
}

/// Failures of `(xy)^p = x^p y^p` over `samples` random pairs.
pub fn power_law_failures(h: &GroupParams, samples: usize, rng: &mut StdRng) -> usize {
    let p = h.p() as i64;
    (0..samples)
        .filter(|_| {
            let x = random_element(h, rng);
            let y = random_element(h, rng);
            h.power(&h.multiply(&x, &y), p) != h.multiply(&h.power(&x, p), &h.power(&y, p))
        })
        .count()
}

/// Commutators outside `<c>`, over all pairs.
pub fn derived_subgroup_escapes(h: &GroupParams) -> usize {
    let elems: Vec<GroupElement> = h.elements().collect();
    elems
        .iter()
        .flat_map(|g| elems.iter().map(move |k| (g, k)))
        .filter(|(g, k)| {
            let comm = h.commutator(g, k);
            comm.x() != 0 || comm.y() != 0
        })
        .count()
}

/// Number of maximal subgroups, and whether each has index `p` by counting
/// the elements its membership predicate accepts.
pub fn maximal_subgroup_summary(h: &GroupParams) -> (usize, bool) {
    let subs = h.maximal_subgroups();
    let index_ok = subs.iter().all(|m| {
        let members = h.elements().filter(|g| m.contains(g)).count() as u64;
        members == m.order && m.order * h.p() == h.order()
    });
    (subs.len(), index_ok)
}

pub fn random_element(h: &GroupParams, rng: &mut StdRng) -> GroupElement {
    h.unrank(rng.random_range(0..h.order())).expect("rank in range")
}

// ---------------------------------------------------------------- residues

/// Check `solve_k` against brute force for every odd prime power up to
/// `limit`, and every Hensel lift against the brute-force roots.
/// Returns `(prime powers checked, mismatches)`.
pub fn solve_k_sweep(limit: u64) -> (usize, usize) {
    let mut checked = 0;
    let mut mismatches = 0;
    for p in (3..=limit).step_by(2).filter(|&p| is_prime(p)) {
        let mut m = p;
        let mut e = 1;
        while m <= limit {
            let brute: Vec<u64> = (1..m)
                .filter(|&k| k % p != 0 && (k as u128 * k as u128 + 1 - k as u128) % m as u128 == 0)
                .collect();
            let solved = solve_k(p, e).unwrap_or_default();
            let lifted_ok = (1..p)
                .filter(|&r| (r * r + 1 - r) % p == 0)
                .filter_map(|r| hensel_lift(r, p, e).ok())
                .all(|k| brute.contains(&k));
            if solved != brute || !lifted_ok {
                mismatches += 1;
            }
            checked += 1;
            m *= p;
            e += 1;
        }
    }
    (checked, mismatches)
}

// ---------------------------------------------------------------- graphs

/// Automorphism group from the refinement search, its order cross-checked
/// against the stabilizer chain.
pub fn aut_group(g: &BiCayleyGraph) -> PermGroup {
    let search = search_automorphisms(g.graph());
    let group = search.group(g.graph().n());
    assert_eq!(group.order(), search.order, "search and stabilizer chain disagree");
    group
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub report: TransitivityReport,
    pub aut: PermGroup,
}

pub fn classify_sigma(p: u64, t: u32, s: u32) -> Result<(BiCayleyGraph, Classification), BiCayleyError> {
    let sigma = build_sigma(p, t, s, None)?;
    let aut = aut_group(&sigma);
    let report = classify_with_group(sigma.graph(), &aut).map_err(|e| BiCayleyError::Verification(e.to_string()))?;
    Ok((sigma, Classification { report, aut }))
}

/// Whether `R(H)` is normal in the full automorphism group.
pub fn is_normal(sigma: &BiCayleyGraph, aut: &PermGroup) -> bool {
    sigma.translation_group().is_normal_in(aut).expect("R(H) consists of automorphisms")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizerCheck {
    /// Order of `R(H) <F, delta>` built from the F and I sets.
    pub formula_order: u128,
    /// Order of the normalizer of `R(H)` found by scanning `Aut`.
    pub computed_order: u128,
    pub mutual_membership: bool,
}

/// Compare the normalizer built from F and I with the one computed inside
/// the full automorphism group by enumeration (small graphs only).
pub fn normalizer_cross_check(sigma: &BiCayleyGraph, aut: &PermGroup) -> Result<NormalizerCheck, BiCayleyError> {
    let formula = sigma.normalizer_of_rh()?;
    let computed = aut.normalizer_by_enumeration(&sigma.translation_group());
    let mutual = formula.generators().iter().all(|g| computed.contains(g))
        && computed.generators().iter().all(|g| formula.contains(g));
    Ok(NormalizerCheck { formula_order: formula.order(), computed_order: computed.order(), mutual_membership: mutual })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientCheck {
    pub vertices: usize,
    pub cubic: bool,
    pub simple: bool,
    pub induced_edge_transitive: bool,
}

/// Quotient of a Sigma graph by `<R(c)>`, with the normalizer of `R(H)`
/// acting on the orbits.
pub fn quotient_by_center(sigma: &BiCayleyGraph) -> Result<QuotientCheck, BiCayleyError> {
    let h = sigma.params();
    let n = PermGroup::new(sigma.graph().n(), vec![sigma.right_translation(&h.c())]).expect("degree matches");
    let q = quotient_by_orbits(sigma.graph(), &n);
    let normalizer = sigma.normalizer_of_rh()?;
    let induced = q
        .induced_group(&normalizer)
        .ok_or_else(|| BiCayleyError::Verification("normalizer does not preserve the <R(c)> orbits".into()))?;
    Ok(QuotientCheck {
        vertices: q.graph.n(),
        cubic: q.graph.is_cubic(),
        simple: !q.dropped_loops && !q.dropped_multi_edges,
        induced_edge_transitive: is_edge_transitive(&q.graph, &induced),
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CanonicalStats {
    /// Scrambled images of `{1, a, b a^k}` tried.
    pub scrambled: usize,
    pub scrambled_canonical: usize,
    pub scrambled_rejected: usize,
    /// Random pairs that were not automorphism images and were redrawn.
    pub redrawn: usize,
    /// Raw sets `{1, u, v}` tried.
    pub raw: usize,
    pub raw_canonical: usize,
    pub raw_rejected: usize,
    pub violations: usize,
}

/// Canonicalization round trip. Each trial draws a random generating pair
/// `(u, v)`. When `a -> u, b -> v` is an automorphism, the scrambled set
/// `g {1, u, v u^k}` (a random translate of the image of `{1, a, b a^k}`)
/// must canonicalize to an admissible `k` with a verified isomorphism onto
/// `Sigma(p,t,s,k)`; otherwise the pair is redrawn. The raw set `{1, u, v}`
/// must either be rejected by the order condition or canonicalize with a
/// verified isomorphism onto `BiCay(H, {}, {}, {1, a, b a^k})`.
pub fn canonical_round_trip(p: u64, t: u32, s: u32, trials: usize, seed: u64) -> Result<CanonicalStats, BiCayleyError> {
    let h = params(p, t, s);
    let reference = build_sigma(p, t, s, None)?;
    let k0 = reference.k().expect("sigma has k");
    let small = reference.graph().n() <= 500;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut stats = CanonicalStats::default();
    let is_root = |k: u64| {
        let m = (h.a_order() / h.b_order()) as u128;
        h.t() == h.s() || (k as u128 * k as u128 + 1 + m - k as u128 % m) % m == 0
    };
    for _ in 0..trials {
        let (u, alpha) = loop {
            let u = random_element(&h, &mut rng);
            let v = random_element(&h, &mut rng);
            if !h.is_generating_pair(&u, &v) {
                continue;
            }
            // The raw set, checked whether or not (u, v) is an automorphism image.
            stats.raw += 1;
            match canonicalize_connection_set(&h, &[h.identity(), u, v]) {
                Ok(form) => {
                    stats.raw_canonical += 1;
                    let source = BiCayleyGraph::build(h, ConnectionTriple::cross([h.identity(), u, v]))?;
                    let target = BiCayleyGraph::build(h, ConnectionTriple::cross(form.canonical_set(&h)))?;
                    if canonical_isomorphism(&source, &target, &form).is_err() {
                        stats.violations += 1;
                    }
                }
                Err(BiCayleyError::NotEdgeTransitiveCandidate(_)) => stats.raw_rejected += 1,
                Err(_) => stats.violations += 1,
            }
            match GroupAutomorphism::from_images(h, u, v) {
                Ok(alpha) => break (u, alpha),
                Err(_) => stats.redrawn += 1,
            }
        };
        let shift = random_element(&h, &mut rng);
        let set: Vec<GroupElement> =
            sigma_connection_set(&h, k0).iter().map(|x| h.multiply(&shift, &alpha.apply(x))).collect();
        debug_assert!(set.contains(&h.multiply(&shift, &u)));
        stats.scrambled += 1;
        match canonicalize_connection_set(&h, &set) {
            Ok(form) => {
                stats.scrambled_canonical += 1;
                let ok = is_root(form.k)
                    && build_sigma(p, t, s, Some(form.k)).ok().is_some_and(|target| {
                        let source = BiCayleyGraph::build(h, ConnectionTriple::cross(set.clone()));
                        source.is_ok_and(|source| {
                            canonical_isomorphism(&source, &target, &form).is_ok()
                                && (!small || are_isomorphic(source.graph(), reference.graph()).is_some())
                        })
                    });
                if !ok {
                    stats.violations += 1;
                }
            }
            Err(BiCayleyError::NotEdgeTransitiveCandidate(_)) => stats.scrambled_rejected += 1,
            Err(_) => stats.violations += 1,
        }
    }
    Ok(stats)
}

// ---------------------------------------------------------------- the matrix

fn default_k(p: u64, t: u32, s: u32) -> Option<u64> {
    admissible_k(&params(p, t, s)).ok()?.first().copied()
}

fn classification_case(p: u64, t: u32, s: u32, level: u32, oracle: bool) -> Case {
    Case {
        name: format!("classify_sigma_{p}_{t}_{s}"),
        params: Some(CaseParams { p, t, s, k: default_k(p, t, s) }),
        source: "classification theorem; order from the s-arc count n*3*2^(s-1)",
        run: Box::new(move || {
            let n = 2 * params(p, t, s).order() as usize;
            let aut_order = n as u128 * 3 * (1u128 << (level - 1));
            let mut expected = values([
                ("s_regular", json!(level)),
                ("aut_order", json!(aut_order)),
                ("stabilizer_order", json!(aut_order / n as u128)),
                ("stabilizer_is_2r3", json!(true)),
            ]);
            let (sigma, c) = match classify_sigma(p, t, s) {
                Ok(x) => x,
                Err(e) => return (expected, values([("error", json!(e.to_string()))]), String::new()),
            };
            let r = &c.report;
            let mut observed = values([
                ("s_regular", json!(r.s_regular)),
                ("aut_order", json!(r.aut_order)),
                ("stabilizer_order", json!(r.stabilizer_order)),
                ("stabilizer_is_2r3", json!(is_two_power_times_three(r.stabilizer_order))),
            ]);
            let mut notes = format!(
                "vertex_transitive={} edge_transitive={} arcs={}",
                r.vertex_transitive,
                r.edge_transitive,
                s_arc_count(sigma.graph(), level as usize)
            );
            if oracle {
                expected.insert("aut_order_by_extension", json!(aut_order));
                observed.insert("aut_order_by_extension", json!(count_automorphisms_by_extension(sigma.graph())));
                notes.push_str("; exhaustive extension count as independent oracle");
            }
            (expected, observed, notes)
        }),
    }
}

fn sigma_case(
    name: &str,
    (p, t, s): (u64, u32, u32),
    source: &'static str,
    run: impl Fn(&BiCayleyGraph) -> Result<(Values, Values, String), BiCayleyError> + 'static,
) -> Case {
    Case {
        name: name.to_string(),
        params: Some(CaseParams { p, t, s, k: default_k(p, t, s) }),
        source,
        run: Box::new(move || match build_sigma(p, t, s, None).and_then(|g| run(&g)) {
            Ok(out) => out,
            Err(e) => (values([("ok", json!(true))]), values([("error", json!(e.to_string()))]), String::new()),
        }),
    }
}

fn cases(suite: Suite) -> Vec<Case> {
    let mut cases = vec![
        Case {
            name: "group_law_oracle".into(),
            params: None,
            source: "rewriting oracle for (3,1,1) and (3,2,1)",
            run: Box::new(|| {
                let m311 = group_law_mismatches(&params(3, 1, 1));
                let m321 = group_law_mismatches(&params(3, 2, 1));
                (
                    values([("mismatches_3_1_1", json!(0)), ("mismatches_3_2_1", json!(0))]),
                    values([("mismatches_3_1_1", json!(m311)), ("mismatches_3_2_1", json!(m321))]),
                    "27^2 and 81^2 products".into(),
                )
            }),
        },
        Case {
            name: "group_properties".into(),
            params: None,
            source: "power law, derived subgroup and maximal subgroups of H(p,t,s)",
            run: Box::new(|| {
                let mut rng = StdRng::seed_from_u64(SEED);
                let power: usize = [(3, 2, 2), (5, 2, 1), (7, 3, 1)]
                    .iter()
                    .map(|&(p, t, s)| power_law_failures(&params(p, t, s), 10_000, &mut rng))
                    .sum();
                let escapes = derived_subgroup_escapes(&params(3, 1, 1));
                let (count, index_ok) = maximal_subgroup_summary(&params(3, 2, 1));
                (
                    values([
                        ("power_law_failures", json!(0)),
                        ("commutators_outside_c", json!(0)),
                        ("maximal_subgroups_3_2_1", json!(4)),
                        ("maximal_index_p", json!(true)),
                    ]),
                    values([
                        ("power_law_failures", json!(power)),
                        ("commutators_outside_c", json!(escapes)),
                        ("maximal_subgroups_3_2_1", json!(count)),
                        ("maximal_index_p", json!(index_ok)),
                    ]),
                    "10^4 random pairs each for (3,2,2), (5,2,1), (7,3,1)".into(),
                )
            }),
        },
        Case {
            name: "solve_k_sweep".into(),
            params: None,
            source: "brute force over every odd prime power up to 10^4",
            run: Box::new(|| {
                let (checked, mismatches) = solve_k_sweep(10_000);
                (values([("mismatches", json!(0))]), values([("mismatches", json!(mismatches))]), format!("{checked} moduli"))
            }),
        },
        classification_case(3, 1, 1, 2, true),
        classification_case(3, 2, 1, 3, false),
        classification_case(5, 1, 1, 2, false),
        classification_case(3, 2, 2, 2, false),
        sigma_case("normal_5_1_1", (5, 1, 1), "R(H) is normal for p > 3", |g| {
            let aut = aut_group(g);
            Ok((values([("normal", json!(true))]), values([("normal", json!(is_normal(g, &aut)))]), String::new()))
        }),
        sigma_case("normal_edge_transitive_3_1_1", (3, 1, 1), "normal edge-transitivity for p = 3", |g| {
            let net = g.is_normal_edge_transitive()?;
            Ok((values([("normal_edge_transitive", json!(true))]), values([("normal_edge_transitive", json!(net))]), String::new()))
        }),
        sigma_case("normal_edge_transitive_3_2_1", (3, 2, 1), "normal edge-transitivity for p = 3", |g| {
            let net = g.is_normal_edge_transitive()?;
            Ok((values([("normal_edge_transitive", json!(true))]), values([("normal_edge_transitive", json!(net))]), String::new()))
        }),
        sigma_case("normalizer_3_1_1", (3, 1, 1), "R(H)<F, delta> equals the normalizer inside Aut", |g| {
            let aut = aut_group(g);
            let c = normalizer_cross_check(g, &aut)?;
            Ok((
                values([("orders_equal", json!(true)), ("mutual_membership", json!(true))]),
                values([
                    ("orders_equal", json!(c.formula_order == c.computed_order)),
                    ("mutual_membership", json!(c.mutual_membership)),
                ]),
                format!("order {} (formula) / {} (scan of Aut)", c.formula_order, c.computed_order),
            ))
        }),
        sigma_case("quotient_3_2_1", (3, 2, 1), "quotient by <R(c)> is cubic with edge-transitive induced action", |g| {
            let q = quotient_by_center(g)?;
            Ok((
                values([
                    ("vertices", json!(54)),
                    ("cubic", json!(true)),
                    ("simple", json!(true)),
                    ("induced_edge_transitive", json!(true)),
                ]),
                values([
                    ("vertices", json!(q.vertices)),
                    ("cubic", json!(q.cubic)),
                    ("simple", json!(q.simple)),
                    ("induced_edge_transitive", json!(q.induced_edge_transitive)),
                ]),
                String::new(),
            ))
        }),
        canonical_case(3, 2, 1),
    ];
    if suite == Suite::Full {
        cases.push(classification_case(3, 3, 2, 2, false));
        cases.push(classification_case(7, 2, 1, 1, false));
        cases.push(canonical_case(7, 2, 1));
        cases.push(Case {
            name: "iso_7_2_1_k3_k5".into(),
            params: Some(CaseParams { p: 7, t: 2, s: 1, k: None }),
            source: "explicit isomorphism between the two admissible k",
            run: Box::new(|| match sigma_k_isomorphism(7, 2, 1, 3, 5) {
                Ok(iso) => (
                    values([("isomorphism", json!(true)), ("edges_checked", json!(7203))]),
                    values([
                        ("isomorphism", json!(iso.source.graph().maps_onto(&iso.perm, iso.target.graph()))),
                        ("edges_checked", json!(iso.source.graph().m())),
                    ]),
                    format!("beta: a -> {}, b -> {}", iso.beta.image_a(), iso.beta.image_b()),
                ),
                Err(e) => (values([("isomorphism", json!(true))]), values([("error", json!(e.to_string()))]), String::new()),
            }),
        });
    }
    cases.sort_by(|a, b| a.name.cmp(&b.name));
    cases
}

fn canonical_case(p: u64, t: u32, s: u32) -> Case {
    Case {
        name: format!("canonical_{p}_{t}_{s}"),
        params: Some(CaseParams { p, t, s, k: None }),
        source: "canonicalization round trip, 100 random generating pairs",
        run: Box::new(move || match canonical_round_trip(p, t, s, 100, SEED) {
            Ok(st) => (
                values([("scrambled", json!(100)), ("violations", json!(0))]),
                values([("scrambled", json!(st.scrambled)), ("violations", json!(st.violations))]),
                format!(
                    "scrambled: {} canonical, {} rejected, {} redrawn; raw {{1,u,v}}: {} canonical, {} rejected of {}",
                    st.scrambled_canonical, st.scrambled_rejected, st.redrawn, st.raw_canonical, st.raw_rejected, st.raw
                ),
            ),
            Err(e) => (values([("violations", json!(0))]), values([("error", json!(e.to_string()))]), String::new()),
        }),
    }
}

/// Names of the cases in a suite, in report order.
pub fn case_names(suite: Suite) -> Vec<String> {
    cases(suite).into_iter().map(|c| c.name).collect()
}

/// Run a suite; `progress` sees each case as it finishes.
pub fn run_suite(suite: Suite, mut progress: impl FnMut(&CaseReport)) -> Vec<CaseReport> {
    cases(suite)
        .into_iter()
        .map(|case| {
            let start = Instant::now();
            let (expected, observed, notes) = (case.run)();
            let report = CaseReport {
                pass: expected == observed,
                name: case.name,
                params: case.params,
                source: case.source,
                expected,
                observed,
                notes,
                runtime: start.elapsed(),
            };
            progress(&report);
            report
        })
        .collect()
}

fn render_values(v: &Values) -> String {
    v.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Human-readable table followed by one JSON object per case.
pub fn render_report(reports: &[CaseReport]) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    writeln!(out, "{:<width$}  {:<6}  {}", "case", "result", "observed").unwrap();
    for r in reports {
        let result = if r.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{:<width$}  {:<6}  {}", r.name, result, render_values(&r.observed)).unwrap();
        if !r.pass {
            writeln!(out, "{:<width$}  {:<6}  expected {}", "", "", render_values(&r.expected)).unwrap();
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    writeln!(out, "{passed}/{} cases passed", reports.len()).unwrap();
    writeln!(out).unwrap();
    for r in reports {
        writeln!(out, "{}", serde_json::to_string(r).expect("report serializes")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_names_are_sorted_and_unique() {
        let names = case_names(Suite::Full);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
        assert!(case_names(Suite::Fast).len() >= 7);
        assert!(names.contains(&"classify_sigma_7_2_1".to_string()));
    }

    #[test]
    fn small_sweep() {
        assert_eq!(solve_k_sweep(200).1, 0);
    }

    #[test]
    fn canonical_round_trip_small() {
        let stats = canonical_round_trip(3, 1, 1, 10, 7).unwrap();
        assert_eq!(stats.violations, 0);
        assert_eq!(stats.scrambled, 10);
    }
}

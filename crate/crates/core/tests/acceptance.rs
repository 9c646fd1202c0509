//! Acceptance criteria, one test per criterion. Each test prints a single
//! `PASS`/`FAIL` line to stderr (visible with `--nocapture`) and panics on
//! failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use sea_roots::harness::{full_suite, AxiomId, Harness, SuiteReport};
use sea_roots::window;
use sea_roots::{
    certify, check_lemma1, enumerate_roots, map_f, map_f3, map_g, map_g3, parse_element, AlgebraConfig, Branch,
    E0Instance, Element, FuzzyInterval, Int, MutantE0, Mutation, SampleWindow, TruncPoly,
};

const SEED: u64 = 0x5EA5_0001;

fn cfg(n: usize) -> AlgebraConfig {
    AlgebraConfig::new(n).unwrap()
}

fn report(criterion: u32, title: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(summary) => eprintln!("PASS criterion {criterion}: {title} ({summary})"),
        Err(why) => {
            eprintln!("FAIL criterion {criterion}: {title}: {why}");
            panic!("criterion {criterion} failed: {why}");
        }
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// Dense product of coefficient vectors indexed from degree 1, as i128.
fn dense_product(a: &[i128], b: &[i128]) -> Vec<i128> {
    // out[d] is the coefficient of x^d
    let mut out = vec![0i128; a.len() + b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j + 2] += x * y;
        }
    }
    out
}

fn small(p: &TruncPoly) -> Vec<i128> {
    p.coeffs().iter().map(|k| i128::try_from(k).unwrap()).collect()
}

/// Independent model of `∘` on the F branch: (p, q, m) triples of i128.
type Triple = (Vec<i128>, Vec<i128>, i128);

fn f_seq_model(n: usize, a: &Triple, b: &Triple) -> Triple {
    let pp = dense_product(&a.0, &b.0);
    let qq = dense_product(&a.1, &b.1);
    let trunc = |v: &[i128]| (1..n).map(|d| v.get(d).copied().unwrap_or(0)).collect::<Vec<_>>();
    let top = |v: &[i128]| v.get(n).copied().unwrap_or(0);
    (trunc(&pp), trunc(&qq), top(&pp) + top(&qq))
}

fn render_model(t: &Triple) -> String {
    let list = |v: &[i128]| v.iter().map(i128::to_string).collect::<Vec<_>>().join(",");
    format!("f([{}];[{}];{})", list(&t.0), list(&t.1), t.2)
}

#[test]
fn criterion_1_root_certificates() {
    let outcome = (|| {
        let mut slowest = Duration::ZERO;
        for n in 2..=5 {
            let start = Instant::now();
            let cert = certify(cfg(n)).map_err(|e| e.to_string())?;
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            ensure(elapsed < Duration::from_secs(1), || format!("n = {n} took {elapsed:?}"))?;
            ensure(cert.verdict.is_pass(), || {
                format!("n = {n}: failed relations {:?}", cert.failures().map(|r| &r.claim).collect::<Vec<_>>())
            })?;

            // powers recomputed by the test-side model
            let mut x = vec![0i128; n - 1];
            x[0] = 1;
            let zeros = vec![0i128; n - 1];
            let a: Triple = (x.clone(), zeros.clone(), 0);
            let b: Triple = (zeros.clone(), x, 0);
            let c: Triple = (zeros.clone(), zeros.clone(), 1);
            let zero: Triple = (zeros.clone(), zeros, 0);
            let mut pa = vec![a.clone()];
            let mut pb = vec![b.clone()];
            for _ in 0..n {
                pa.push(f_seq_model(n, &a, pa.last().unwrap()));
                pb.push(f_seq_model(n, &b, pb.last().unwrap()));
            }
            ensure(cert.a == render_model(&a) && cert.b == render_model(&b) && cert.c == render_model(&c), || {
                format!("n = {n}: unexpected a, b, c")
            })?;
            for k in 1..n {
                ensure(pa[k - 1] != pb[k - 1] && pa[k - 1] != c && pb[k - 1] != c, || {
                    format!("n = {n}: model says a^{k} or b^{k} collides")
                })?;
            }
            ensure(pa[n - 1] == c && pb[n - 1] == c && pa[n] == zero && pb[n] == zero, || {
                format!("n = {n}: model powers disagree with the certificate claims")
            })?;

            let claim = |name: &str| cert.relations.iter().find(|r| r.claim == name);
            for (name, want) in [
                (format!("a^{n} = c"), render_model(&pa[n - 1])),
                (format!("b^{n} = c"), render_model(&pb[n - 1])),
                (format!("a^{} = 0", n + 1), render_model(&pa[n])),
                (format!("b^{} = 0", n + 1), render_model(&pb[n])),
            ] {
                let rel = claim(&name).ok_or_else(|| format!("n = {n}: missing relation {name}"))?;
                ensure(rel.left == want && rel.verdict.is_pass(), || format!("n = {n}: {name} gave {}", rel.left))?;
            }
            for k in 1..n {
                for name in [format!("a^{k} != b^{k}"), format!("a^{k} != c"), format!("b^{k} != c")] {
                    let rel = claim(&name).ok_or_else(|| format!("n = {n}: missing relation {name}"))?;
                    ensure(rel.verdict.is_pass(), || format!("n = {n}: {name} failed"))?;
                }
            }
            for (base, powers) in [("a", &pa), ("b", &pb)] {
                for k in 1..=n {
                    let name = format!("{base}^{} < {base}^{k}", k + 1);
                    let rel = claim(&name).ok_or_else(|| format!("n = {n}: missing chain link {name}"))?;
                    ensure(
                        rel.verdict.is_pass() && rel.left == render_model(&powers[k]) && rel.right == render_model(&powers[k - 1]),
                        || format!("n = {n}: chain link {name} wrong"),
                    )?;
                }
            }
        }
        Ok(format!("n = 2..5, slowest {slowest:?}"))
    })();
    report(1, "root certificates for n = 2..5", outcome);
}

fn suite_failures(report: &SuiteReport) -> Vec<String> {
    report
        .reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} ({} violations)", r.axiom, r.violation_count))
        .collect()
}

#[test]
fn criterion_2_axioms_at_window_scale() {
    let outcome = (|| {
        let start = Instant::now();
        let suite: Vec<AxiomId> = AxiomId::EFFECT_ALGEBRA.into_iter().chain(AxiomId::SEQUENTIAL).collect();
        let harness = Harness::default();

        let w = SampleWindow::exhaustive(1, 1);
        let rep = harness.run_suite(&E0Instance::new(cfg(2)), &suite, &w).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("n = 2 exhaustive: {:?}", suite_failures(&rep)))?;
        for r in &rep.reports {
            let want = 22u64.pow(r.axiom.arity() as u32);
            ensure(r.trials == want, || format!("n = 2 {}: {} tuples, expected {want}", r.axiom, r.trials))?;
        }

        for n in 3..=5 {
            let w = SampleWindow::sampled(2, 2, 100_000, SEED);
            let rep = harness.run_suite(&E0Instance::new(cfg(n)), &suite, &w).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || format!("n = {n} sampled: {:?}", suite_failures(&rep)))?;
            ensure(rep.reports.iter().all(|r| r.trials == 100_000), || format!("n = {n}: short trial counts"))?;
        }
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
        Ok(format!("exhaustive n = 2, 10^5 sampled tuples per axiom for n = 3..5, {elapsed:?}"))
    })();
    report(2, "EA1-EA4 and SEA1-SEA5 hold on E0 windows", outcome);
}

#[test]
fn criterion_3_polynomial_identities_and_oracle() {
    let outcome = (|| {
        let w = SampleWindow::exhaustive(2, 0);
        let mut checked = 0u64;
        for n in 2..=4 {
            let reports = check_lemma1(cfg(n), &w).map_err(|e| e.to_string())?;
            ensure(reports.len() == 8, || format!("n = {n}: {} reports", reports.len()))?;
            for r in &reports {
                ensure(r.passed(), || format!("n = {n} {}: {:?}", r.axiom, r.violations))?;
                let want = window::poly_count(cfg(n), 2).unwrap().pow(r.axiom.arity() as u32) as u64;
                ensure(r.trials == want, || format!("n = {n} {}: {} tuples, expected {want}", r.axiom, r.trials))?;
                checked += r.trials;
            }

            // test-side oracle on every pair and triple
            let polys = window::polys(cfg(n), 2);
            for p1 in &polys {
                for p2 in &polys {
                    let full = dense_product(&small(p1), &small(p2));
                    let f = small(&map_f(p1, p2).map_err(|e| e.to_string())?);
                    let g = i128::try_from(&map_g(p1, p2).map_err(|e| e.to_string())?).unwrap();
                    ensure(f == full[1..n] && g == full[n], || format!("n = {n}: F/G mismatch at ({p1}, {p2})"))?;
                    for p3 in &polys {
                        let full3 = dense_product(&full[1..], &small(p3));
                        // full[1..] starts at degree 1, so indices shift by one
                        let f3 = small(&map_f3(p1, p2, p3).map_err(|e| e.to_string())?);
                        let g3 = i128::try_from(&map_g3(p1, p2, p3).map_err(|e| e.to_string())?).unwrap();
                        ensure(f3 == full3[1..n] && g3 == full3[n], || {
                            format!("n = {n}: F3/G3 mismatch at ({p1}, {p2}, {p3})")
                        })?;
                    }
                }
            }
        }
        Ok(format!("{checked} tuples across n = 2..4, coefficients in [-2, 2]"))
    })();
    report(3, "polynomial identities and full-product oracle", outcome);
}

#[test]
fn criterion_4_monomial_table() {
    let outcome = (|| {
        let mut cases = 0;
        for n in 2..=6 {
            let c = cfg(n);
            let p = |j: usize| TruncPoly::monomial(c, j).unwrap();
            for j in 1..n {
                let f = map_f(&p(1), &p(j)).map_err(|e| e.to_string())?;
                let g = map_g(&p(1), &p(j)).map_err(|e| e.to_string())?;
                if j < n - 1 {
                    ensure(f == p(1 + j) && g == Int::ZERO, || format!("n = {n}, j = {j}: F = {f}, G = {g}"))?;
                } else {
                    ensure(f.is_zero() && g == Int::ONE, || format!("n = {n}, j = {j}: F = {f}, G = {g}"))?;
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} cases for n = 2..6"))
    })();
    report(4, "F(x, x^j) and G(x, x^j) table", outcome);
}

#[test]
fn criterion_5_order_laws() {
    let outcome = (|| {
        let inst = E0Instance::new(cfg(2));
        let w = SampleWindow::exhaustive(1, 1);
        let rep = Harness::default().run_suite(&inst, &AxiomId::ORDER, &w).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("{:?}", suite_failures(&rep)))?;
        let le_oracle = rep.report(AxiomId::LeOracle).unwrap();
        ensure(le_oracle.trials == 22 * 22 && le_oracle.note.is_none(), || {
            format!("LE-oracle compared {} pairs, note {:?}", le_oracle.trials, le_oracle.note)
        })?;

        // test-side oracle: a ≤ b iff some window element c has a ⊕ c = b
        let elems = window::elements(cfg(2), &SampleWindow::exhaustive(2, 2));
        let small_window = window::elements(cfg(2), &w);
        let mut related = 0;
        for a in &small_window {
            for b in &small_window {
                let exists = elems.iter().any(|c| a.oplus(c).unwrap().defined() == Some(b));
                let closed = a.le(b).unwrap();
                ensure(closed == exists, || format!("{a} <= {b}: closed {closed}, search {exists}"))?;
                related += usize::from(closed);
            }
        }
        Ok(format!("{} pairs, {related} related", small_window.len().pow(2)))
    })();
    report(5, "order laws and closed-form order on n = 2 window", outcome);
}

#[test]
fn criterion_6_mutants_are_caught() {
    let outcome = (|| {
        let w = SampleWindow::exhaustive(1, 1);
        let harness = Harness::default();
        let mut caught = Vec::new();
        for mutation in Mutation::ALL {
            let mutant = MutantE0::new(E0Instance::new(cfg(2)), mutation);
            let rep = harness.run_suite(&mutant, &full_suite(true), &w).map_err(|e| e.to_string())?;
            let failing: Vec<_> = rep.reports.iter().filter(|r| !r.passed()).collect();
            ensure(!failing.is_empty(), || format!("{mutation} passed every check"))?;
            for r in &failing {
                let witness = &r.violations[0].witness;
                let replays = sea_roots::harness::replay(&mutant, r.axiom, witness).map_err(|e| e.to_string())?;
                ensure(replays, || format!("{mutation} {}: witness {witness:?} does not replay", r.axiom))?;
            }
            caught.push(format!("{mutation} by {}", failing[0].axiom));
        }
        let fuzzy = FuzzyInterval::default();
        let rep = harness.run_suite(&fuzzy, &full_suite(false), &w).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("fuzzy instance failed: {:?}", suite_failures(&rep)))?;
        Ok(format!("{}; fuzzy passes", caught.join(", ")))
    })();
    report(6, "mutants fail, reference instance passes", outcome);
}

#[test]
fn criterion_7_window_roots() {
    let outcome = (|| {
        let c2 = cfg(2);
        let c = parse_element(c2, "f([0];[0];1)").map_err(|e| e.to_string())?;
        let w = SampleWindow::exhaustive(1, 1);
        let roots: BTreeSet<Element> = enumerate_roots(&c, 2, &w).map_err(|e| e.to_string())?.into_iter().collect();

        let expected: BTreeSet<Element> = (-1..=1)
            .flat_map(|m| {
                [
                    Element::from_i64s(c2, Branch::F, &[1], &[0], m).unwrap(),
                    Element::from_i64s(c2, Branch::F, &[0], &[1], m).unwrap(),
                ]
            })
            .collect();
        ensure(roots == expected, || format!("got {roots:?}"))?;

        let brute: BTreeSet<Element> = window::elements(c2, &w)
            .into_iter()
            .filter(|e| e.seq(e).unwrap() == c)
            .collect();
        ensure(roots == brute, || format!("brute force found {brute:?}"))?;
        Ok(format!("{} roots", roots.len()))
    })();
    report(7, "square roots of f(0,0,1) in the n = 2 window", outcome);
}

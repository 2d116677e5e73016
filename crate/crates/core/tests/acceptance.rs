//! Acceptance criteria. Runs as a plain binary and prints one PASS/FAIL line
//! per criterion; exits nonzero if any criterion fails.

use std::process::{Command, ExitCode};

use isolation_kit::constructions::{build_special, Attach, BuildOptions, Remainder, TreeShape};
use isolation_kit::graph::is_isomorphic;
use isolation_kit::harness::{random_connected, Corpus};
use isolation_kit::{
    bound, gamma, iota_exact, is_isolating, is_special_pair, isolate, Graph, Pattern,
    SolverErrorKind, VertexSet,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn patterns_k2() -> Vec<Pattern> {
    ["p3", "k3", "k13", "paw", "k4", "k14"]
        .iter()
        .map(|n| Pattern::builtin(n).unwrap())
        .collect()
}

fn corpus7() -> Corpus {
    Corpus::exhaustive_up_to(7, None).unwrap()
}

/// AC1: `ι ≤ ⌊(m+1)/(k+2)⌋` on every connected graph with n ≤ 7 for every
/// built-in pattern with k ≥ 2; the only exempt rows are `G ≃ F` and
/// `(C6, P3)`.
fn ac1(corpus: &Corpus) -> Outcome {
    let at7 = corpus.graphs.iter().filter(|g| g.graph.n() == 7).count();
    if at7 != 853 {
        return Err(format!("{at7} classes at n=7, expected 853"));
    }
    let mut rows = 0;
    let mut exempt = 0;
    for cg in &corpus.graphs {
        for p in patterns_k2() {
            rows += 1;
            let g = &cg.graph;
            let iota = iota_exact(g, &p).unwrap().iota;
            let b = bound(g.m(), p.k());
            let special = is_special_pair(g, &p);
            if special {
                exempt += 1;
                let expected = is_isomorphic(g, p.graph()) || (p.name() == "p3" && g.is_c6());
                if !expected {
                    return Err(format!("unexpected exempt row {} / {}", cg.id, p.name()));
                }
            } else if iota > b {
                return Err(format!("{} / {}: iota {iota} > bound {b}", cg.id, p.name()));
            }
        }
    }
    // each of the six patterns once as G ≃ F, plus (C6, P3)
    if exempt != 7 {
        return Err(format!("{exempt} exempt rows, expected 7"));
    }
    Ok(format!("{rows} rows, 0 violations, {exempt} exempt"))
}

/// AC2: The constructive solver on the same corpus: isolating, within the
/// bound, never below the exact value, and no invariant violations.
fn ac2(corpus: &Corpus) -> Outcome {
    let mut checked = 0;
    for cg in &corpus.graphs {
        for p in patterns_k2() {
            let g = &cg.graph;
            if is_special_pair(g, &p) {
                continue;
            }
            let cert = isolate(g, &p)
                .map_err(|e| format!("{} / {}: {:?} {}", cg.id, p.name(), e.kind, e.message))?;
            let iota = iota_exact(g, &p).unwrap().iota;
            if !is_isolating(g, &p, cert.set) {
                return Err(format!("{} / {}: not isolating", cg.id, p.name()));
            }
            if cert.size() > cert.bound || cert.size() < iota {
                return Err(format!(
                    "{} / {}: size {} outside [{iota}, {}]",
                    cg.id,
                    p.name(),
                    cert.size(),
                    cert.bound
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} certificates checked"))
}

/// AC3: Pure `(m, F)`-special graphs: solver size is exactly `q`, and so is
/// `ι` when n ≤ 14.
fn ac3() -> Outcome {
    let mut builds = 0;
    let mut exact_checked = 0;
    for name in ["p3", "k3", "k13"] {
        let p = Pattern::builtin(name).unwrap();
        let k = p.k();
        for m in (0..=30).filter(|m| (m + 1) % (k + 2) == 0) {
            let q = (m + 1) / (k + 2);
            for tree in [
                TreeShape::Path,
                TreeShape::Star,
                TreeShape::Random(m as u64 * 31 + 5),
            ] {
                let opts = BuildOptions {
                    tree,
                    remainder: Remainder::Edgeless,
                    attach: Attach::Dominator,
                };
                let b = build_special(&p, m, &opts).map_err(|e| e.to_string())?;
                let cert =
                    isolate(&b.graph, &p).map_err(|e| format!("{name} m={m}: {}", e.message))?;
                if cert.size() != q || !cert.isolating {
                    return Err(format!(
                        "{name} m={m} {tree:?}: size {} != q {q}",
                        cert.size()
                    ));
                }
                if b.graph.n() <= 14 {
                    let iota = iota_exact(&b.graph, &p).unwrap().iota;
                    if iota != q {
                        return Err(format!("{name} m={m} {tree:?}: iota {iota} != q {q}"));
                    }
                    exact_checked += 1;
                }
                builds += 1;
            }
        }
    }
    Ok(format!(
        "{builds} builds with size q, {exact_checked} with exact iota = q"
    ))
}

/// AC4: Both exempt families strictly exceed the bound.
fn ac4() -> Outcome {
    let p3 = Pattern::builtin("p3").unwrap();
    let c6 = iota_exact(&Graph::cycle(6), &p3).unwrap().iota;
    if c6 != 2 || c6 != bound(6, 2) + 1 {
        return Err(format!("iota(C6, P3) = {c6}"));
    }
    for p in Pattern::all_builtins() {
        let iota = iota_exact(p.graph(), &p).unwrap().iota;
        let expected = (p.k() + 1) / (p.k() + 2) + 1;
        if iota != 1 || iota != expected || iota <= bound(p.k(), p.k()) {
            return Err(format!("iota({0}, {0}) = {iota}", p.name()));
        }
    }
    Ok("iota(C6,P3)=2 and iota(F,F)=1 for all 8 built-ins".into())
}

fn random_pattern(rng: &mut ChaCha8Rng, all: &[Pattern]) -> Pattern {
    all[rng.gen_range(0..all.len())].clone()
}

/// AC5: `ι(G) ≤ |X| + ι(G − Y)` for `Y ⊆ N[X]`, and additivity over components.
fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let all = Pattern::all_builtins();
    for trial in 0..1000 {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(n + 6));
        let g = random_connected(n, m, rng.gen()).unwrap();
        let p = random_pattern(&mut rng, &all);
        let x: VertexSet = (0..n).filter(|_| rng.gen_bool(0.25)).collect();
        let y: VertexSet = g
            .closed_neighborhood(x)
            .iter()
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        let lhs = iota_exact(&g, &p).unwrap().iota;
        let rest = g.delete_vertices(y);
        let rhs = x.len() + iota_exact(&rest.graph, &p).unwrap().iota;
        if lhs > rhs {
            return Err(format!("trial {trial}: {lhs} > |X| + iota(G-Y) = {rhs}"));
        }
    }
    for trial in 0..200 {
        let parts = rng.gen_range(2..=3);
        let mut union = Graph::empty(0);
        let mut sum = 0;
        let p = random_pattern(&mut rng, &all);
        for _ in 0..parts {
            let n = rng.gen_range(1..=6);
            let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
            let h = random_connected(n, m, rng.gen()).unwrap();
            sum += iota_exact(&h, &p).unwrap().iota;
            union = union.disjoint_union(&h).unwrap();
        }
        let whole = iota_exact(&union, &p).unwrap().iota;
        if whole != sum {
            return Err(format!("union trial {trial}: {whole} != {sum}"));
        }
    }
    Ok("1000 vertex-deletion triples, 200 disjoint unions".into())
}

/// AC6: `γ = ι(·, K1)` on n ≤ 6, and the K3 bound is the clique bound for k = 3.
fn ac6(corpus: &Corpus) -> Outcome {
    let k1 = Pattern::builtin("k1").unwrap();
    let mut checked = 0;
    for cg in corpus.graphs.iter().filter(|g| g.graph.n() <= 6) {
        let gm = gamma(&cg.graph).unwrap();
        let iota = iota_exact(&cg.graph, &k1).unwrap().iota;
        if gm != iota {
            return Err(format!("{}: gamma {gm} != iota {iota}", cg.id));
        }
        checked += 1;
    }
    let k3 = Pattern::builtin("k3").unwrap();
    let clique_edges = 3 * 2 / 2;
    for cg in &corpus.graphs {
        let g = &cg.graph;
        let clique_bound = (g.m() + 1) / (clique_edges + 2);
        if bound(g.m(), k3.k()) != clique_bound {
            return Err(format!("m={}: bounds disagree", g.m()));
        }
        if !is_special_pair(g, &k3) && iota_exact(g, &k3).unwrap().iota > clique_bound {
            return Err(format!("{}: K3 clique bound exceeded", cg.id));
        }
    }
    Ok(format!(
        "gamma = iota(K1) on {checked} graphs; K3 bound agrees on {}",
        corpus.len()
    ))
}

fn run_verify(
    dir: &std::path::Path,
    tag: &str,
    workers: &str,
) -> Result<(Vec<u8>, Vec<u8>), String> {
    let csv = dir.join(format!("{tag}.csv"));
    let json = dir.join(format!("{tag}.json"));
    let status = Command::new(env!("CARGO_BIN_EXE_isolation-kit"))
        .args([
            "verify",
            "--pattern",
            "p3,k3,k13,paw",
            "--n",
            "9",
            "--m",
            "13",
            "--count",
            "60",
        ])
        .args(["--seed", "17", "--exact", "--workers", workers])
        .arg("--out")
        .arg(&csv)
        .arg("--summary")
        .arg(&json)
        .output()
        .map_err(|e| e.to_string())?;
    if !status.status.success() {
        return Err(format!("verify exited with {:?}", status.status.code()));
    }
    Ok((std::fs::read(csv).unwrap(), std::fs::read(json).unwrap()))
}

/// AC7: Reports are byte-identical across runs and worker counts.
fn ac7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = run_verify(dir.path(), "a", "1")?;
    let b = run_verify(dir.path(), "b", "1")?;
    let c = run_verify(dir.path(), "c", "4")?;
    if a != b || a != c {
        return Err("reports differ".into());
    }
    let csv = String::from_utf8_lossy(&a.0);
    if !csv.contains("case_tags") || !String::from_utf8_lossy(&a.1).contains("\"case_tags\"") {
        return Err("case-tag histogram missing".into());
    }
    Ok(format!("{} CSV bytes identical over 3 runs", a.0.len()))
}

fn main() -> ExitCode {
    let corpus = corpus7();
    let criteria: Vec<Criterion> = vec![
        (
            "AC1 bound holds on exhaustive n<=7",
            Box::new(|| ac1(&corpus)),
        ),
        (
            "AC2 constructive solver certified",
            Box::new(|| ac2(&corpus)),
        ),
        ("AC3 equality on pure special graphs", Box::new(ac3)),
        ("AC4 exception catalogue", Box::new(ac4)),
        ("AC5 deletion and union properties", Box::new(ac5)),
        ("AC6 special-case consistency", Box::new(|| ac6(&corpus))),
        ("AC7 deterministic reports", Box::new(ac7)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    // special inputs are refused outright
    let refused = isolate(&Graph::cycle(6), &Pattern::builtin("p3").unwrap())
        .unwrap_err()
        .kind;
    assert_eq!(refused, SolverErrorKind::SpecialPairInput);
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

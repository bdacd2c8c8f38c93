//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::{
    collections::BTreeSet,
    panic::{catch_unwind, AssertUnwindSafe},
    process::Command,
    time::{Duration, Instant},
};

use gammacx_core::{
    algebra::{ls_generators, normal_form, partial_conjugation, verify_relators, whitehead_automorphism, Endomorphism, Word},
    blowup::BlowupComplex,
    census::census_graph,
    graph::{fixtures, small_graphs},
    isometry::{central_decomposition, cubical_isometries, determinant, matrix_order, trivial_h1_audit},
    metric::{
        label_twist_leq, random_allowable, refit_frame, straighten, validate_allowable, SkewedStructure, TotalLabelOrder,
        TOLERANCE,
    },
    partition::{compatible_collections, enumerate_partitions, WhiteheadPartition},
    tori::{all_maximal_tori, intersect_tori},
    DefiningGraph,
};
use oracle::{clique_counts, partition_oracle, Oracle};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> DefiningGraph {
    fixtures::all().into_iter().find(|(n, _)| *n == name).unwrap().1
}

fn single(g: &DefiningGraph, p: &str) -> BlowupComplex {
    BlowupComplex::build(g, &[WhiteheadPartition::parse(g, p).unwrap()]).unwrap()
}

fn fixture_blowups() -> Vec<(&'static str, BlowupComplex)> {
    fixtures::all()
        .into_iter()
        .flat_map(|(name, g)| {
            compatible_collections(&g).into_iter().map(move |c| (name, BlowupComplex::build(&g, &c).unwrap())).collect::<Vec<_>>()
        })
        .collect()
}

fn partition_census() -> Outcome {
    let mut counts = Vec::new();
    for (name, expected) in [("E2", 0), ("K3", 0), ("D2", 2), ("P3", 2), ("F3", 4)] {
        let g = fixture(name);
        let library = enumerate_partitions(&g).len();
        let brute = partition_oracle(&g).len();
        ensure(library == expected && brute == expected, || {
            format!("{name}: library {library}, oracle {brute}, expected {expected}")
        })?;
        counts.push(format!("{name} {library}"));
    }
    Ok(counts.join(", "))
}

fn blowup_census() -> Outcome {
    let start = Instant::now();
    let (mut graphs, mut complexes) = (0, 0);
    for g in small_graphs(4) {
        let c = census_graph(&g);
        ensure(c.violations.is_empty(), || format!("{g:?}: {:?}", c.violations))?;
        let chi: i64 = clique_counts(&g).iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        ensure(c.complexes.iter().all(|s| s.euler == chi), || format!("{g:?}: euler differs from {chi}"))?;
        graphs += 1;
        complexes += c.collections();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    Ok(format!("{graphs} graphs, {complexes} complexes, 0 violations in {:.1}s", elapsed.as_secs_f64()))
}

fn fixture_f_vectors() -> Outcome {
    let (d, p, f) = (fixture("D2"), fixture("P3"), fixture("F3"));
    let cases = [
        ("D2 theta", single(&d, "a b | a^-1 b^-1"), vec![2, 3]),
        ("P3", single(&p, "a c | a^-1 c^-1"), vec![2, 5, 3]),
        ("F3", single(&f, "b w | b^-1 w^-1"), vec![2, 5, 2]),
    ];
    for (name, b, expected) in &cases {
        let brute = Oracle { g: b.graph(), parts: b.partitions() }.f_vector();
        ensure(b.f_vector() == *expected && brute == *expected, || format!("{name}: {:?}, oracle {brute:?}", b.f_vector()))?;
    }
    let pb = &cases[1].1;
    let central = central_decomposition(pb);
    ensure(central.certified(), || format!("P3 central decomposition: {:?}", central.violations))?;
    ensure(central.complement_f_vector == [2, 3] && central.center.len() == 1, || {
        format!("P3 complement {:?}, center of size {}", central.complement_f_vector, central.center.len())
    })?;
    let tori = all_maximal_tori(pb).map_err(|e| e.to_string())?;
    ensure(tori.len() == 2, || format!("P3 has {} maximal tori", tori.len()))?;
    let meet = intersect_tori(pb, &tori[0], &tori[1]).map_err(|e| e.to_string())?;
    ensure(meet.f_vector() == [2, 3, 1], || format!("P3 torus intersection {:?}", meet.f_vector()))?;
    Ok(String::from("theta (2,3), P3 (2,5,3) = (2,3) x circle, F3 (2,5,2), P3 tori meet in (2,3,1)"))
}

fn metric_suite() -> Outcome {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut structures = 0;
    for (name, b) in fixture_blowups() {
        let order = TotalLabelOrder::default_for(&b);
        for seed in 0..100 {
            let s = random_allowable(&b, &order, seed);
            let defects = validate_allowable(&b, &order, &s);
            ensure(defects.is_empty(), || format!("{name} seed {seed}: {:?}", defects))?;
            for t in grid {
                let st = straighten(&s, t).map_err(|e| format!("{name} seed {seed} t {t}: {e}"))?;
                ensure(validate_allowable(&b, &order, &st).is_empty(), || format!("{name} seed {seed}: invalid at t = {t}"))?;
                for f in &st.frames {
                    for (j, &l) in f.labels.iter().enumerate() {
                        let drift = (f.column_norm(j) - s.lengths[l]).abs();
                        ensure(drift <= TOLERANCE, || format!("{name} seed {seed} t {t}: length drift {drift:e}"))?;
                    }
                }
                ensure(t < 1.0 || st.is_rectilinear(), || format!("{name} seed {seed}: not rectilinear at t = 1"))?;
            }
            structures += 1;
        }
    }

    // every shear in a C4 square is forbidden
    let c4 = fixture("C4");
    let mut c4_injections = 0;
    for coll in compatible_collections(&c4) {
        let b = BlowupComplex::build(&c4, &coll).unwrap();
        let order = TotalLabelOrder::default_for(&b);
        let s = random_allowable(&b, &order, 7);
        for (fi, f) in s.frames.iter().enumerate() {
            for i in 0..f.labels.len() {
                for j in i + 1..f.labels.len() {
                    ensure(!label_twist_leq(&b, f.labels[j], f.labels[i]), || String::from("C4 square admits a shear"))?;
                    let mut bad = s.clone();
                    bad.frames[fi].shear[i][j] = 0.3;
                    let _ = refit_frame(&mut bad.frames[fi], &s.lengths);
                    let codes: Vec<&str> = validate_allowable(&b, &order, &bad).iter().map(|d| d.code()).collect();
                    ensure(codes.contains(&"shear_forbidden"), || format!("C4 injection gave {codes:?}"))?;
                    c4_injections += 1;
                }
            }
        }
    }
    ensure(c4_injections > 0, || String::from("no C4 squares"))?;

    // an allowed shear changed on the partition squares only breaks the angle condition
    let f3 = fixture("F3");
    let b = single(&f3, "b w | b^-1 w^-1");
    let order = TotalLabelOrder::default_for(&b);
    let partition = b.partition_label(0);
    let mut angle_injections = 0;
    for seed in 0..20 {
        let s = random_allowable(&b, &order, seed);
        let mut bad = s.clone();
        for f in bad.frames.iter_mut() {
            if f.labels[0] == partition && f.labels.len() == 2 && label_twist_leq(&b, f.labels[1], f.labels[0]) {
                f.shear[0][1] += 0.1;
                refit_frame(f, &s.lengths).map_err(|e| e.to_string())?;
            }
        }
        let codes: Vec<&str> = validate_allowable(&b, &order, &bad).iter().map(|d| d.code()).collect();
        ensure(codes.contains(&"angle_condition"), || format!("F3 seed {seed}: {codes:?}"))?;
        angle_injections += 1;
    }
    Ok(format!(
        "{structures} structures valid along t in {grid:?}, {c4_injections} C4 shears rejected, {angle_injections} F3 angle violations rejected"
    ))
}

fn automorphism_suite() -> Outcome {
    let (mut generators, mut whitehead) = (0, 0);
    for g in small_graphs(4) {
        for l in ls_generators(&g) {
            ensure(verify_relators(&g, &l.map) && verify_relators(&g, &l.inverse), || format!("{g:?}: {:?}", l.kind))?;
            generators += 1;
        }
        for p in enumerate_partitions(&g) {
            for m in p.max_set(&g).iter() {
                let phi = whitehead_automorphism(&g, &p, m).map_err(|e| e.to_string())?;
                ensure(verify_relators(&g, &phi), || format!("{g:?}: {}", p.display(&g)))?;
                ensure(phi.compose(&g, &phi).is_identity(&g), || format!("{g:?}: {} squared", p.display(&g)))?;
                whitehead += 1;
            }
        }
        for v in 0..g.len() {
            let product = g
                .components_minus_star(v)
                .into_iter()
                .fold(Endomorphism::identity(g.len()), |acc, c| partial_conjugation(&g, v, c, false).compose(&g, &acc));
            let by = Word::gen(v);
            for x in 0..g.len() {
                let diff = by.concat(&Word::gen(x)).concat(&by.inverse()).concat(&product.images[x].inverse());
                ensure(normal_form(&g, &diff).is_empty(), || format!("{g:?}: partial conjugations by {v} on {x}"))?;
            }
        }
    }
    Ok(format!("{generators} generators, {whitehead} Whitehead automorphisms, partial conjugation products inner"))
}

fn isometry_audit() -> Outcome {
    let rose = BlowupComplex::salvetti(&fixture("D2"));
    let unit = SkewedStructure::unit(&rose);
    let n_unit = cubical_isometries(&rose, &unit).len();
    let distinct = SkewedStructure::rectilinear(&rose, unit.order.clone(), vec![1.0, 2.0]);
    let n_distinct = cubical_isometries(&rose, &distinct).len();
    ensure(n_unit == 8 && n_distinct == 4, || format!("rose groups of order {n_unit} and {n_distinct}"))?;

    let (mut audits, mut matrices) = (0, BTreeSet::new());
    for (name, b) in fixture_blowups() {
        let order = TotalLabelOrder::default_for(&b);
        for seed in 0..20 {
            let r = trivial_h1_audit(&b, &random_allowable(&b, &order, seed));
            ensure(r.kernel_order == 1 && r.injective && r.violations.is_empty(), || {
                format!("{name} seed {seed}: kernel {}, injective {}, {:?}", r.kernel_order, r.injective, r.violations)
            })?;
            for m in &r.h1_images {
                ensure(determinant(m).abs() == 1, || format!("{name} seed {seed}: det {} for {m:?}", determinant(m)))?;
                ensure(matrix_order(m, 1 << 12).is_some(), || format!("{name} seed {seed}: {m:?} has no finite order"))?;
            }
            matrices.extend(r.h1_images);
            audits += 1;
        }
    }
    Ok(format!("rose orders 8 and 4; {audits} audits with trivial kernel, {} distinct H1 matrices", matrices.len()))
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("census{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_gammacx"))
            .args(["census", "--out", out.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.success(), || format!("census exited with {status}"))?;
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(reports[0] == reports[1], || String::from("census reports differ"))?;
    Ok(format!("two census runs, {} identical bytes", reports[0].len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("partition census", partition_census),
        ("blowup census", blowup_census),
        ("fixture f-vectors", fixture_f_vectors),
        ("metric suite", metric_suite),
        ("automorphism suite", automorphism_suite),
        ("isometry audit", isometry_audit),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err(String::from("panicked")));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

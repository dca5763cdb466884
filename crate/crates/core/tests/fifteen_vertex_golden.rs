//! Golden values for the fifteen-vertex fixture with `L = 3`.

use std::collections::BTreeSet;
use std::path::PathBuf;

use tpa_core::generic::{self, EnumerationLimits};
use tpa_core::io::{self, PathOrder};
use tpa_core::oracle::{self, rational, MatrixModule, OraclePdim};
use tpa_core::{ExtNat, MonomialModule, Path, SemisimpleSequence, SlotPath, TruncatedAlgebra, VertexId};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn algebra() -> TruncatedAlgebra {
    io::parse_quiver(&fixture("fifteen.tqa")).unwrap()
}

fn v(alg: &TruncatedAlgebra, name: &str) -> VertexId {
    alg.quiver().vertex_by_name(name).unwrap()
}

fn path(alg: &TruncatedAlgebra, expr: &str) -> Path {
    io::parse_path(alg, expr, PathOrder::RightToLeft).unwrap()
}

#[test]
fn shape_of_fixture() {
    let alg = algebra();
    assert_eq!(alg.vertex_count(), 15);
    assert_eq!(alg.quiver().arrows().len(), 23);
    assert_eq!(alg.bound(), 3);
}

#[test]
fn longest_paths_and_cyclebound_set() {
    let alg = algebra();
    let q = alg.quiver();
    assert_eq!(q.c_out(v(&alg, "10")), ExtNat::Fin(5));
    assert_eq!(q.c_out(v(&alg, "8")), ExtNat::Fin(7));
    assert_eq!(q.c_out(v(&alg, "7")), ExtNat::Inf);
    let expected: BTreeSet<VertexId> = (1..=7).map(|i| v(&alg, &i.to_string())).collect();
    assert_eq!(q.cyclebound_set(), expected);
}

#[test]
fn cyclic_ideals_and_findim() {
    let alg = algebra();
    assert_eq!(alg.pdim_cyclic(&path(&alg, "a9*a8*b7")).unwrap(), ExtNat::Fin(3));
    assert_eq!(alg.pdim_cyclic(&path(&alg, "b7")).unwrap(), ExtNat::Fin(3));
    assert_eq!(alg.pdim_cyclic(&path(&alg, "a7")).unwrap(), ExtNat::Inf);

    let report = alg.findim();
    assert_eq!(report.findim, 4);
    assert_eq!(report.s, 3);
    assert_eq!(report.witness, Some((v(&alg, "8"), 1)));
    assert_eq!(report.longest_acyclic_path, Some(7));
    assert_eq!(report.bracket, Some((3, 4)));
    assert_eq!(report.max_simple_pdim, Some(3));
}

#[test]
fn simple_modules() {
    let alg = algebra();
    for i in 1..=15 {
        let p = alg.pdim_simple(v(&alg, &i.to_string()));
        assert_eq!(p == ExtNat::Inf, i <= 7, "vertex {i}");
    }
    let worst = (8..=15).map(|i| alg.pdim_simple(v(&alg, &i.to_string()))).max().unwrap();
    assert_eq!(worst, ExtNat::Fin(3));
}

#[test]
fn quotient_by_b7_formula_and_oracle() {
    let alg = algebra();
    let m = io::parse_module(&alg, &fixture("e7_mod_b7.mod"), PathOrder::RightToLeft).unwrap();
    assert_eq!(m.pdim(&alg), ExtNat::Fin(4));
    let trace = oracle::pdim(&alg, &MatrixModule::from_monomial(&alg, &m));
    assert_eq!(trace.result, OraclePdim::Exact(4));
    assert!(trace.steps.iter().all(|s| s.minimal));

    let ideal = MatrixModule::left_ideal(&alg, &path(&alg, "a9*a8*b7")).unwrap();
    assert_eq!(oracle::pdim(&alg, &ideal).result, OraclePdim::Exact(3));
}

fn module_m(alg: &TruncatedAlgebra) -> MonomialModule {
    io::parse_module(alg, &fixture("five_slots.mod"), PathOrder::RightToLeft).unwrap()
}

#[test]
fn skeleton_and_syzygy_of_five_slot_module() {
    let alg = algebra();
    let m = module_m(&alg);
    let sigma = m.skeleton(&alg);
    let written: BTreeSet<(usize, String)> = sigma
        .paths()
        .iter()
        .map(|sp| (sp.slot + 1, alg.quiver().format_path(&sp.path)))
        .collect();
    let expected: BTreeSet<(usize, String)> = [
        (1, "e(3)"),
        (1, "a3"),
        (1, "b4*a3"),
        (1, "b3*b4*a3"),
        (2, "e(5)"),
        (3, "e(6)"),
        (4, "e(2)"),
        (4, "b2"),
        (4, "a10*b2"),
        (5, "e(2)"),
    ]
    .into_iter()
    .map(|(s, p)| (s, p.to_string()))
    .collect();
    assert_eq!(written, expected);

    let syzygy: Vec<String> = m
        .syzygy(&alg)
        .iter()
        .map(|sp| alg.quiver().format_path(&sp.path))
        .collect();
    for g in ["b3", "a4*a3", "a3*b4*a3", "a5", "b5", "a6", "b6", "a2"] {
        assert!(syzygy.iter().any(|s| s == g), "missing generator {g}");
    }
    assert_eq!(syzygy.len(), 14);
    assert_eq!(m.radical_layering(&alg), layering_of_m(&alg));
    assert_eq!(m.pdim(&alg), ExtNat::Inf);
}

fn layering_of_m(alg: &TruncatedAlgebra) -> SemisimpleSequence {
    let mut s = SemisimpleSequence::zeros(4, 15);
    for (layer, names) in [
        (0, vec!["3", "5", "6", "2", "2"]),
        (1, vec!["4", "10"]),
        (2, vec!["3", "11"]),
        (3, vec!["12"]),
    ] {
        for n in names {
            s.add_to(v(alg, n).index(), layer, 1);
        }
    }
    s
}

/// The module with basis `z1..z5, x4, x10, x3, x11, x12`, where
/// `x4 = a3 z1 = b5 z2 = b6 z3`, `x10 = b2 z4`, `x3 = b4 x4`,
/// `x11 = a10 x10 = g2 z5`, `x12 = b3 x3 = a11 x11`; every other arrow
/// acts as zero. Not monomial: `x4` and `x11` are reached from several
/// slots.
fn explicit_m(alg: &TruncatedAlgebra) -> (MatrixModule, Vec<(VertexId, Vec<tpa_core::oracle::Rational>)>) {
    let names = ["3", "5", "6", "2", "2", "4", "10", "3", "11", "12"];
    let basis: Vec<VertexId> = names.iter().map(|n| v(alg, n)).collect();
    let arrow = |l: &str| alg.quiver().arrow_by_label(l).unwrap().id;
    let one = rational(1);
    let entries = vec![
        (arrow("a3"), 0, 5, one.clone()),
        (arrow("b5"), 1, 5, one.clone()),
        (arrow("b6"), 2, 5, one.clone()),
        (arrow("b2"), 3, 6, one.clone()),
        (arrow("b4"), 5, 7, one.clone()),
        (arrow("a10"), 6, 8, one.clone()),
        (arrow("g2"), 4, 8, one.clone()),
        (arrow("b3"), 7, 9, one.clone()),
        (arrow("a11"), 8, 9, one.clone()),
    ];
    let (m, local) = MatrixModule::from_sparse(alg, &basis, &entries).unwrap();
    let gens = (0..5)
        .map(|k| {
            let d = m.dims()[basis[k].index()];
            let mut e = vec![rational(0); d];
            e[local[k]] = rational(1);
            (basis[k], e)
        })
        .collect();
    (m, gens)
}

#[test]
fn oracle_on_explicit_five_slot_module() {
    let alg = algebra();
    let (m, gens) = explicit_m(&alg);
    assert_eq!(m.dimension(), 10);
    assert_eq!(m.radical_layering(&alg), layering_of_m(&alg));

    let fixture_module = module_m(&alg);
    let sigma = oracle::skeleton_extract_with(&alg, &m, &gens, None::<&mut rand::rngs::StdRng>).unwrap();
    assert_eq!(sigma, fixture_module.skeleton(&alg));

    let syz = oracle::syzygy_with_cover(&alg, &m, &gens);
    assert!(syz.minimal && syz.generated);
    let critical = fixture_module.syzygy(&alg);
    let expected_dims = critical
        .iter()
        .map(|sp| MatrixModule::left_ideal(&alg, &sp.path).unwrap())
        .fold(MatrixModule::zero(&alg), |acc, x| acc.direct_sum(&x));
    assert_eq!(syz.module.dims(), expected_dims.dims());
    let shape = |v: &[SlotPath]| {
        let mut s: Vec<(VertexId, usize)> = v.iter().map(|sp| (sp.target(), sp.len())).collect();
        s.sort();
        s
    };
    assert_eq!(shape(&syz.generators), shape(&critical));

    let trace = oracle::pdim(&alg, &m);
    assert!(trace.result.matches(ExtNat::Inf));
}

fn tree_edges(alg: &TruncatedAlgebra, q: &str) -> BTreeSet<(usize, String, String, String)> {
    let m = MonomialModule::cyclic(alg, &path(alg, q)).unwrap();
    let g = m.layered_graph(alg, false);
    g.edges
        .iter()
        .map(|e| {
            let from = g.node(&e.from).unwrap();
            let to = g.node(&e.to).unwrap();
            (to.level, from.label.clone(), e.arrow.clone(), to.label.clone())
        })
        .collect()
}

fn edges(list: &[(usize, &str, &str, &str)]) -> BTreeSet<(usize, String, String, String)> {
    list.iter()
        .map(|&(l, a, b, c)| (l, a.to_string(), b.to_string(), c.to_string()))
        .collect()
}

#[test]
fn graphs_of_three_cyclic_ideals() {
    let alg = algebra();
    assert_eq!(tree_edges(&alg, "a4*a3"), edges(&[(1, "1", "a1", "1"), (1, "1", "b1", "2")]));
    assert_eq!(tree_edges(&alg, "b3"), edges(&[(1, "12", "a12", "13"), (2, "13", "a13", "14")]));
    assert_eq!(
        tree_edges(&alg, "a2"),
        edges(&[
            (1, "3", "a3", "4"),
            (1, "3", "b3", "12"),
            (2, "4", "a4", "1"),
            (2, "4", "b4", "3"),
            (2, "12", "a12", "13"),
        ])
    );
    let root = MonomialModule::cyclic(&alg, &path(&alg, "a2")).unwrap().layered_graph(&alg, false);
    assert_eq!(root.nodes.iter().filter(|n| n.level == 0).count(), 1);
    assert_eq!(root.nodes[0].label, "3");
}

#[test]
fn projective_at_one_layering() {
    let alg = algebra();
    let s = io::parse_sequence(&alg, &fixture("pe1.seq")).unwrap();
    let pe1 = MonomialModule::projective(vec![v(&alg, "1")]);
    assert_eq!(pe1.radical_layering(&alg), s);
    assert_eq!(s.total_dimension(), 18);
    assert_eq!(MatrixModule::projective(&alg, v(&alg, "1")).radical_layering(&alg), s);
}

#[test]
fn spectrum_of_projective_at_one() {
    let alg = algebra();
    let s = io::parse_sequence(&alg, &fixture("pe1.seq")).unwrap();
    let report = generic::spectrum(&alg, &s).unwrap();
    assert_eq!(report.generic, ExtNat::ZERO);
    let expected: BTreeSet<ExtNat> =
        [ExtNat::Fin(0), ExtNat::Fin(2), ExtNat::Fin(3), ExtNat::Fin(4), ExtNat::Inf].into();
    assert_eq!(report.full_set, expected);
    assert!(!report.full_set.contains(&ExtNat::Fin(1)));

    let check = generic::spectrum_check(&alg, &s, EnumerationLimits::default()).unwrap();
    assert!(check.agrees(), "{check:?}");
    assert_eq!(check.enumerated_values, expected);
    assert_eq!(check.monotonicity_violations, 0);
}

#[test]
fn tree_modules_realize_findim() {
    let alg = algebra();
    let best = alg
        .quiver()
        .vertices()
        .filter_map(|i| generic::tree_t(&alg, i).to_module(&alg).pdim(&alg).finite())
        .max();
    assert_eq!(best, Some(alg.findim().findim));
}

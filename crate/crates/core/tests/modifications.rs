use sheaf_forge::groebner::Submodule;
use sheaf_forge::modification::{
    build_modification, pullback, pushforward_finite, pushforward_ideal, torsion_free_pullback, Modification,
    ModificationKind,
};
use sheaf_forge::modules::{
    presentation_of_ideal, tensor_presentation, torsion_free_quotient, torsion_submodule, ModuleMap,
};
use sheaf_forge::{CoordinateRing, Ideal, Polynomial, Presentation, RingMap};

fn cusp() -> CoordinateRing {
    CoordinateRing::parse("ring x, y | relations: x^3 - y^2 | domain").unwrap()
}

fn normalization() -> Modification {
    let line = CoordinateRing::polynomial(&["t"]);
    let map = RingMap::new(cusp(), line.clone(), vec![line.parse_poly("t^2").unwrap(), line.parse_poly("t^3").unwrap()])
        .unwrap();
    let basis = vec![line.one(), line.parse_poly("t").unwrap()];
    build_modification(ModificationKind::FiniteMap { map, basis }).unwrap()
}

/// The normalization module: generators `1, w` with `x·w = y`, `y·w = x²`.
fn normalized_cusp_module() -> Presentation {
    let r = cusp();
    let p = |s: &str| r.parse_poly(s).unwrap();
    Presentation::new(&r, 2, vec![vec![p("-y"), p("x")], vec![p("-x^2"), p("y")]]).unwrap()
}

fn plane() -> Modification {
    build_modification(ModificationKind::BlowupOrigin { n: 2 }).unwrap()
}

fn ideal(r: &CoordinateRing, gens: &[&str]) -> Presentation {
    let g: Vec<Polynomial> = gens.iter().map(|s| r.parse_poly(s).unwrap()).collect();
    presentation_of_ideal(r, &g).unwrap()
}

#[test]
fn normalization_pullback_relations() {
    let m = normalization();
    let pulled = pullback(&normalized_cusp_module(), &m).unwrap().remove(0);
    let t = pulled.ring();
    let expected =
        Submodule::new(t, 2, vec![vec![t.parse_poly("-t^3").unwrap(), t.parse_poly("t^2").unwrap()], vec![
            t.parse_poly("-t^4").unwrap(),
            t.parse_poly("t^3").unwrap(),
        ]])
        .unwrap();
    assert!(pulled.relation_module().equals(&expected));
    let tf = torsion_free_quotient(&pulled).unwrap();
    let (min, _) = tf.minimize();
    assert!(min.is_free() && min.num_generators() == 1);
}

#[test]
fn direct_image_of_pullback_has_torsion_at_the_origin() {
    let m = normalization();
    let pulled = pullback(&normalized_cusp_module(), &m).unwrap().remove(0);
    let pushed = pushforward_finite(&pulled, &m).unwrap();
    let t = torsion_submodule(&pushed).unwrap();
    assert!(!t.is_zero());
    let origin = Ideal::parse(&m.base, "x, y").unwrap();
    for w in &t.witnesses {
        assert!(origin.radical_contains(w));
    }
    for (g, w) in t.torsion_generators.iter().zip(&t.witnesses) {
        assert!(pushed.is_zero_class(g.scale(w).coords()));
    }
}

#[test]
fn direct_image_of_torsion_free_pullback_is_the_normalization() {
    let m = normalization();
    let pulled = pullback(&normalized_cusp_module(), &m).unwrap().remove(0);
    let tf = torsion_free_quotient(&pulled).unwrap();
    let pushed = pushforward_finite(&tf, &m).unwrap();
    assert!(torsion_submodule(&pushed).unwrap().is_zero());
    let (min, _) = pushed.minimize();
    assert_eq!(min.num_generators(), 2);
    assert!(min.relation_module().equals(&normalized_cusp_module().relation_module()));
}

#[test]
fn torsion_free_pullback_preserves_monos_and_epis() {
    let m = plane();
    let r = &m.base;
    let (x, y) = (r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap());
    let max = ideal(r, &["x", "y"]);
    let o = Presentation::free(r, 1);
    let incl = ModuleMap::new(max.clone(), o, vec![vec![x], vec![y]]).unwrap();
    let e = |i: usize| (0..2).map(|k| if k == i { r.one() } else { r.zero() }).collect::<Vec<_>>();
    let surj = ModuleMap::new(Presentation::free(r, 2), max, vec![e(0), e(1)]).unwrap();
    assert!(incl.is_injective() && surj.is_surjective());
    for c in &m.charts {
        assert!(incl.map_ring(&c.to_base).unwrap().torsion_free().unwrap().is_injective());
        assert!(surj.map_ring(&c.to_base).unwrap().torsion_free().unwrap().is_surjective());
    }
    let residue = Presentation::from_rows(r, vec![vec![r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()]]).unwrap();
    for t in torsion_free_pullback(&residue, &m).unwrap() {
        assert!(t.presentation.is_zero_module());
    }
}

#[test]
fn tensor_square_of_the_maximal_ideal_per_chart() {
    let m = plane();
    let max = ideal(&m.base, &["x", "y"]);
    let square = tensor_presentation(&max, &max).unwrap();
    let whole = torsion_free_pullback(&square, &m).unwrap();
    let factor = torsion_free_pullback(&max, &m).unwrap();
    for ((w, f), c) in whole.iter().zip(&factor).zip(&m.charts) {
        let prod = tensor_presentation(&f.presentation, &f.presentation).unwrap();
        let prod_tf = torsion_free_quotient(&prod).unwrap();
        let lhs = w.transform_ideal.as_ref().unwrap();
        let rhs = Ideal::new(&c.ring, prod_tf.values().unwrap().to_vec()).unwrap();
        assert!(lhs.equals(&rhs));
        assert!(w.presentation.relation_module().equals(&prod_tf.relation_module()));
    }
}

#[test]
fn tensor_of_torsion_free_ideals_has_torsion() {
    let r = CoordinateRing::polynomial(&["z", "w"]);
    let i = ideal(&r, &["z^2", "z*w"]);
    let j = ideal(&r, &["w^2", "z*w"]);
    let t = tensor_presentation(&i, &j).unwrap();
    // z²⊗w² − zw⊗zw at indices 0 and 3
    let mut v = vec![r.zero(); 4];
    v[0] = r.one();
    v[3] = r.int(-1);
    assert!(!t.is_zero_class(&v));
    let z = r.parse_poly("z").unwrap();
    assert!(t.is_zero_class(&v.iter().map(|c| c * &z).collect::<Vec<_>>()));
    let tor = torsion_submodule(&t).unwrap();
    assert!(!tor.is_zero());
    assert!(tor.quotient.is_zero_class(&v));
}

#[test]
fn ideals_embed_in_their_torsion_free_direct_image() {
    let m = plane();
    let cases: &[&[&str]] = &[&["x^2", "y^3"], &["x*y", "y^4"], &["x^4", "x^2*y", "y^2"], &["x^3"]];
    for gens in cases {
        let p = ideal(&m.base, gens);
        let charts: Vec<Ideal> =
            torsion_free_pullback(&p, &m).unwrap().into_iter().map(|t| t.transform_ideal.unwrap()).collect();
        let pushed = pushforward_ideal(&charts, &m).unwrap();
        let base = Ideal::new(&m.base, p.values().unwrap().to_vec()).unwrap();
        assert!(base.is_subset(&pushed));
        // pulling the direct image back again gives the same chart ideals
        let again = torsion_free_pullback(&presentation_of_ideal(&m.base, pushed.generators()).unwrap(), &m).unwrap();
        for (a, k) in again.iter().zip(&charts) {
            assert!(a.transform_ideal.as_ref().unwrap().equals(k));
        }
    }
}

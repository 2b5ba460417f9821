use tilecheck::aabb::Aabb;
use tilecheck::constructions::{
    build_checkerboard_tiling, build_e_1d_example, build_e_3d, checkerboard_offset, enumerate_lattice_configs,
    lift_to_dim, NearCube3DParams, Segment,
};
use tilecheck::lattice::{Lattice, TranslationSystem};
use tilecheck::polybox::{unit_cube, PolyBox};
use tilecheck::rational::{int, rat, Rational};
use tilecheck::tiling::is_tiling;

/// `(P + s) mod 1` as a subset of `[0, 1)`.
fn shift_mod_one(p: &PolyBox, s: &Rational) -> PolyBox {
    let moved = p.translate(std::slice::from_ref(s)).unwrap();
    let unit = unit_cube(1);
    let mut out = PolyBox::empty(1);
    for k in -2..=2 {
        let piece = moved.translate(&[int(k)]).unwrap().intersect(&unit).unwrap();
        out = out.union(&piece).unwrap();
    }
    out
}

fn complement(p: &PolyBox) -> PolyBox {
    unit_cube(1).difference(p).unwrap()
}

#[test]
fn edge_patterns_match_across_quarter_shifts() {
    for s in [rat(1, 4), rat(-1, 4), rat(3, 4), rat(-3, 4)] {
        let p = shift_mod_one(&Segment::P.pattern_set(), &s);
        assert_eq!(p, complement(&Segment::Q.pattern_set()), "P/Q at {s}");
        let r = shift_mod_one(&Segment::R.pattern_set(), &s);
        assert_eq!(r, complement(&Segment::S.pattern_set()), "R/S at {s}");
    }
    // Without a shift the edges collide.
    let p = Segment::P.pattern_set();
    assert!(p.intersection_measure(&Segment::Q.pattern_set()).unwrap() > int(0));
}

#[test]
fn corners_partition_under_checkerboard() {
    for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1), (-3, 2)] {
        let pieces = [
            (Segment::C, checkerboard_offset(i, j)),
            (Segment::D, checkerboard_offset(i + 1, j)),
            (Segment::B, checkerboard_offset(i, j + 1)),
            (Segment::A, checkerboard_offset(i + 1, j + 1)),
        ];
        let mut total = int(0);
        let mut union = PolyBox::empty(1);
        for (seg, t) in pieces {
            let moved = shift_mod_one(&seg.pattern_set(), &t);
            total += moved.measure();
            union = union.union(&moved).unwrap();
        }
        assert_eq!(total, int(1));
        assert_eq!(union, unit_cube(1), "corner at ({i},{j})");
    }
}

#[test]
fn near_cube_sandwich() {
    let eps = rat(1, 10);
    let (e, _) = build_e_3d(&NearCube3DParams::new(eps.clone()).unwrap());
    let inner = PolyBox::from_box(Aabb::new(vec![eps.clone(); 3], vec![int(1); 3]).unwrap());
    let outer = PolyBox::from_box(Aabb::new(vec![int(0); 3], vec![rat(11, 10); 3]).unwrap());
    assert!(e.contains_ae(&inner).unwrap());
    assert!(outer.contains_ae(&e).unwrap());
}

#[test]
fn checkerboard_tiles_for_several_epsilons() {
    let (system, _) = build_checkerboard_tiling(1).unwrap();
    let w = Aabb::new(vec![int(0); 3], vec![int(2), int(2), int(1)]).unwrap();
    for eps in [rat(1, 3), rat(1, 10), rat(1, 100), rat(9, 10)] {
        let (e, _) = build_e_3d(&NearCube3DParams::new(eps.clone()).unwrap());
        let d = is_tiling(&e, &system, &w).unwrap();
        assert!(d.holds, "ε = {eps}");
        assert!(d.report.extends_globally(&system));
    }
}

#[test]
fn lattice_configs_fail_for_several_epsilons() {
    let w = Aabb::new(vec![int(0); 3], vec![int(2), int(2), int(1)]).unwrap();
    for eps in [rat(1, 3), rat(1, 100)] {
        let (e, _) = build_e_3d(&NearCube3DParams::new(eps).unwrap());
        for c in enumerate_lattice_configs(&rat(1, 4)) {
            assert!(!is_tiling(&e, &c.system(), &w).unwrap().holds);
        }
    }
}

#[test]
fn lifted_checkerboard_tiles() {
    let (e, _) = build_e_3d(&NearCube3DParams::new(rat(1, 10)).unwrap());
    let lifted = lift_to_dim(&e, 4).unwrap();
    let (system, _) = build_checkerboard_tiling(1).unwrap();
    let system = system.lift(1);
    let w = Aabb::new(vec![int(0); 4], vec![int(2), int(2), int(1), int(1)]).unwrap();
    assert!(is_tiling(&lifted, &system, &w).unwrap().holds);
}

#[test]
fn sharp_example_tiles_with_half_shift() {
    let e = build_e_1d_example();
    let t = TranslationSystem::periodic_1d(&[int(0), rat(1, 2)], int(2)).unwrap();
    let w = Aabb::new(vec![int(0)], vec![int(2)]).unwrap();
    assert!(is_tiling(&e, &t, &w).unwrap().holds);
    let z = TranslationSystem::lattice_only(Lattice::integer(1));
    assert!(!is_tiling(&e, &z, &w).unwrap().holds);
}

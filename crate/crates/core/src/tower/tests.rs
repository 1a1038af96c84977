use super::*;
use crate::algebra::LocalExtension;
use crate::poly::parse_poly;
use proptest::prelude::*;

fn zloc(p: u64) -> TowerRing {
    TowerRing::new(RingSpec::localized_integers(p).unwrap()).unwrap()
}

fn base_poly(t: &TowerRing, text: &str) -> Poly<TowerElement> {
    t.base_poly(&parse_poly(t.base(), text).unwrap())
}

fn rat(t: &TowerRing, text: &str) -> TowerElement {
    t.element_from_json(&crate::ring::parse_json(text).unwrap()).unwrap()
}

fn q(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}

fn padic(p: u64, n: u32) -> RingSpec {
    RingSpec::truncated_padics(p, n).unwrap()
}

/// x with x² + x − 5 = 0 over Z_(5).
fn golden() -> AdjoinedRoot {
    zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[-5,1,1]")).unwrap()
}

#[test]
fn adjoin_hensel_root_examples() {
    let AdjoinedRoot { ring: t, root: x, cofactor } = golden();
    assert_eq!(t.rank(), 2);
    // x² reduces to 5 − x
    let x2 = t.mul(&x, &x);
    assert_eq!(x2.num(), &[t.base().from_int(5), t.base().from_int(-1)]);
    let x1 = t.add(&x, &t.one());
    assert!(t.tower_eq(&t.mul(&x, &x1), &t.from_int(5)).unwrap());
    assert!(t.is_unit(&cofactor).unwrap());
    assert_eq!(t.tower_residue(&x).unwrap(), Value::Int(0));

    let lin = zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[0,1]")).unwrap();
    assert_eq!(lin.ring.rank(), 1);
    assert!(lin.ring.is_zero(&lin.root));

    let err = zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[-1,1,1]")).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
    let err = zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[0,5,1]")).unwrap_err();
    assert!(matches!(err, Error::PreconditionViolated(_)));
    assert_eq!(
        zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[0,1,2]")).unwrap_err(),
        Error::NotMonic
    );
    assert!(TowerRing::new(RingSpec::rationals()).is_err());
}

#[test]
fn local_split_examples() {
    let AdjoinedRoot { ring: t, root: x, .. } = golden();
    assert_eq!(t.local_split(&x).unwrap(), Split::Radical);
    let x1 = t.add(&x, &t.one());
    let Split::Unit(v) = t.local_split(&x1).unwrap() else {
        panic!("x + 1 is a unit");
    };
    assert!(t.is_one(&t.mul(&x1, &v)));
    let Split::Unit(w) = t.local_split(&rat(&t, "[3,2]")).unwrap() else {
        panic!("3/2 is a unit");
    };
    assert!(t.tower_eq(&w, &rat(&t, "[2,3]")).unwrap());
    assert_eq!(w, rat(&t, "[2,3]"));
}

#[test]
fn equality_examples() {
    let AdjoinedRoot { ring: t, root: x, .. } = golden();
    let lhs = t.add(&t.mul(&x, &x), &x);
    assert!(t.tower_eq(&lhs, &t.from_int(5)).unwrap());
    assert!(!t.tower_eq(&x, &t.zero()).unwrap());
    let image = TowerMap::into_spec(&t, &padic(5, 6)).unwrap().apply(&x).unwrap();
    assert_ne!(image, Value::Int(0));
    assert!(t.tower_eq(&x, &x).unwrap());

    // x(x + 1) = 0 with x + 1 a unit kills x
    let split = zloc(5).adjoin_hensel_root(&base_poly(&zloc(5), "[0,1,1]")).unwrap();
    let (s, y) = (split.ring, split.root);
    assert!(!s.is_zero_vec(y.num()));
    assert!(s.tower_eq(&y, &s.zero()).unwrap());

    let other = zloc(7);
    assert_eq!(t.tower_eq(&x, &other.zero()).unwrap_err(), Error::MixedRings);
}

#[test]
fn residue_examples() {
    let AdjoinedRoot { ring: t, root: x, .. } = golden();
    let q = t
        .local_split(&t.add(&x, &t.one()))
        .map(|s| match s {
            Split::Unit(inv) => inv,
            Split::Radical => panic!("x + 1 is a unit"),
        })
        .unwrap();
    let frac = t.mul(&t.add(&x, &t.from_int(3)), &q);
    assert_eq!(t.tower_residue(&frac).unwrap(), Value::Int(3));
    assert_eq!(t.lift_residue(&Value::Int(4)).map(|e| t.tower_residue(&e).unwrap()).unwrap(), Value::Int(4));
}

#[test]
fn residue_extension_examples() {
    let base = zloc(5);
    // 2 is not a square mod 5
    assert!((0..5u64).all(|a| a * a % 5 != 2));
    let (t, u) = base.adjoin_residue_extension(&base_poly(&base, "[-2,0,1]")).unwrap();
    let k = t.residue_field().unwrap();
    assert_eq!(k.field_size(), Some(25));
    let r = t.tower_residue(&u).unwrap();
    assert_eq!(k.mul(&r, &r), k.from_int(2));
    assert!((0..5).all(|a| !k.equal(&r, &k.from_int(a))));
    for v in k.field_elements().unwrap() {
        assert_eq!(t.tower_residue(&t.lift_residue(&v).unwrap()).unwrap(), v);
    }

    let (t1, c) = base.adjoin_residue_extension(&base_poly(&base, "[-3,1]")).unwrap();
    assert_eq!(t1.residue_field().unwrap(), RingSpec::prime_field(5).unwrap());
    assert!(t1.tower_eq(&c, &t1.from_int(3)).unwrap());

    assert!((1..5u64).any(|a| a * a % 5 == 1));
    assert_eq!(
        base.adjoin_residue_extension(&base_poly(&base, "[-1,0,1]")).unwrap_err(),
        Error::NotResiduallyIrreducible
    );
}

#[test]
fn stacked_residue_extensions() {
    // F_5 ⊂ F_25 ⊂ F_625 through U² − 2, then V² − u
    let base = zloc(5);
    let (t, u) = base.adjoin_residue_extension(&base_poly(&base, "[-2,0,1]")).unwrap();
    let pr = PolyRing::new(t.clone());
    let f = pr.poly(vec![t.neg(&u), t.zero(), t.one()]);
    let (t2, v) = t.adjoin_residue_extension(&f).unwrap();
    let k = t2.residue_field().unwrap();
    assert_eq!(k.field_size(), Some(625));
    let rv = t2.tower_residue(&v).unwrap();
    let ru = t2.tower_residue(&t2.embed(&u).unwrap()).unwrap();
    assert_eq!(k.mul(&rv, &rv), ru);
    assert_eq!(k.mul(&ru, &ru), k.from_int(2));
    let mut seen: Vec<u64> = (0..625u64)
        .map(|i| {
            let coords: Vec<Value> = (0..4).map(|j| t2.base().from_int(((i / 5u64.pow(j)) % 5) as i64)).collect();
            let e = TowerElement { num: coords, den: t2.one_vec() };
            k.field_index(&t2.tower_residue(&e).unwrap()).unwrap()
        })
        .collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 625);
}

#[test]
fn evaluation_examples() {
    let AdjoinedRoot { ring: t, root: x, .. } = golden();
    let roots: Vec<u64> = (0..125u64).filter(|a| a % 5 == 0 && (a * a + a + 120) % 125 == 0).collect();
    assert_eq!(roots, vec![105]);
    let map = TowerMap::into_spec(&t, &padic(5, 3)).unwrap();
    assert_eq!(map.apply(&x).unwrap(), Value::Int(105));
    assert_eq!(map.apply(&rat(&t, "[3,2]")).unwrap(), padic(5, 3).from_rational(&q(3, 2)).unwrap());

    let base = zloc(7);
    let s = base.adjoin_hensel_root(&base_poly(&base, "[-7,1,1]")).unwrap();
    let roots: Vec<u64> = (0..343u64).filter(|a| a % 7 == 0 && (a * a + a + 336) % 343 == 0).collect();
    assert_eq!(roots, vec![301]);
    let m7 = TowerMap::into_spec(&s.ring, &padic(7, 3)).unwrap();
    assert_eq!(m7.apply(&s.root).unwrap(), Value::Int(301));

    assert!(matches!(
        TowerMap::into_spec(&t, &padic(7, 3)),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn evaluation_through_residue_extension() {
    let base = zloc(5);
    let (t, u) = base.adjoin_residue_extension(&base_poly(&base, "[-2,0,1]")).unwrap();
    let pr = PolyRing::new(t.clone());
    // X² + X − 5u
    let f = pr.poly(vec![t.mul(&t.from_int(-5), &u), t.one(), t.one()]);
    let AdjoinedRoot { ring: t2, root: x, .. } = t.adjoin_hensel_root(&f).unwrap();
    let f2 = PolyRing::new(t2.clone());
    let lifted = f2.poly(f.coeffs().iter().map(|c| t2.embed(c).unwrap()).collect());
    assert!(t2.is_zero(&f2.eval(&lifted, &x)));

    assert_eq!(TowerMap::into_spec(&t2, &padic(5, 4)).err(), Some(Error::NoCompatibleRoot));

    let zp = padic(5, 4);
    let ext = LocalExtension::new(zp.clone(), parse_poly(&zp, "[-2,0,1]").unwrap()).unwrap();
    let e2 = ext.clone();
    let map = TowerMap::new(&t2, &ext, move |v: &Value| Ok(e2.embed(&zp.from_rational(v.as_rat().unwrap())?))).unwrap();
    let (ui, xi) = (map.apply(&t2.embed(&u).unwrap()).unwrap(), map.apply(&x).unwrap());
    assert!(ext.equal(&ext.mul(&ui, &ui), &ext.from_int(2)));
    let fx = ext.add(&ext.add(&ext.mul(&xi, &xi), &xi), &ext.mul(&ext.from_int(-5), &ui));
    assert!(ext.is_zero(&fx));

    let k = ext.residue_field().unwrap();
    let other = k.neg(&ext.residue(&ui).unwrap());
    let zp = padic(5, 4);
    let e3 = ext.clone();
    let flipped = TowerMap::with_residual_roots(&t2, &ext, move |v: &Value| Ok(e3.embed(&zp.from_rational(v.as_rat().unwrap())?)), &[other.clone()]).unwrap();
    let uf = flipped.apply(&t2.embed(&u).unwrap()).unwrap();
    assert_eq!(ext.residue(&uf).unwrap(), other);
    assert!(ext.equal(&uf, &ext.neg(&ui)));
}

#[test]
fn scaled_coefficients() {
    // X² + X/(1+x) − x over the golden tower: the coefficient has a nontrivial denominator
    let AdjoinedRoot { ring: t, root: x, .. } = golden();
    let inv = t.inverse(&t.add(&t.one(), &x)).unwrap();
    assert!(!t.is_constant_vec(inv.den()));
    let pr = PolyRing::new(t.clone());
    let f = pr.poly(vec![t.neg(&x), inv.clone(), t.one()]);
    let AdjoinedRoot { ring: t2, root: z, cofactor } = t.adjoin_hensel_root(&f).unwrap();
    let lifted = PolyRing::new(t2.clone()).poly(f.coeffs().iter().map(|c| t2.embed(c).unwrap()).collect());
    assert!(t2.is_zero(&PolyRing::new(t2.clone()).eval(&lifted, &z)));
    assert!(t2.in_radical(&z).unwrap() && t2.is_unit(&cofactor).unwrap());
    let map = TowerMap::into_spec(&t2, &padic(5, 6)).unwrap();
    let (xi, zi) = (map.apply(&t2.embed(&x).unwrap()).unwrap(), map.apply(&z).unwrap());
    let r = padic(5, 6);
    let val = r.add(&r.add(&r.mul(&zi, &zi), &r.mul(&zi, &r.inverse(&r.add(&r.one(), &xi)).unwrap())), &r.neg(&xi));
    assert!(r.is_zero(&val));
}

#[test]
fn rank_cap() {
    let mut t = zloc(3);
    for _ in 0..6 {
        t = t.adjoin_hensel_root(&base_poly(&t, "[-3,1,1]")).unwrap().ring;
    }
    assert_eq!(t.rank(), 64);
    assert_eq!(
        t.adjoin_hensel_root(&base_poly(&t, "[-3,1,1]")).unwrap_err(),
        Error::DegreeCapExceeded { degree: 128, cap: TOWER_RANK_CAP }
    );
    assert!(t.adjoin_hensel_root(&base_poly(&t, "[-3,1]")).is_ok());
}

#[test]
fn separable_closure_steps() {
    // oracle: a quadratic or cubic is irreducible iff it has no root
    fn first_rootless(q: u64, d: usize) -> Vec<u64> {
        (0..q.pow(d as u32))
            .map(|i| (0..d).map(|j| (i / q.pow(j as u32)) % q).collect::<Vec<u64>>())
            .find(|c| {
                (0..q).all(|a| {
                    let v = c.iter().rev().fold(1u64, |acc, &x| (acc * a + x) % q);
                    v != 0
                })
            })
            .unwrap()
    }
    let f = separable_closure_step(2, 2).unwrap();
    assert_eq!(f.coeffs().iter().map(|c| c.as_int().unwrap()).collect::<Vec<_>>(), vec![1, 1, 1]);
    assert_eq!(first_rootless(2, 2), vec![1, 1]);
    let lin = separable_closure_step(7, 1).unwrap();
    assert_eq!(lin.coeffs(), &[Value::Int(0), Value::Int(1)]);
    let q5 = separable_closure_step(5, 2).unwrap();
    let expect = first_rootless(5, 2);
    assert_eq!(q5.coeffs()[..2].iter().map(|c| c.as_int().unwrap()).collect::<Vec<_>>(), expect);
    assert_eq!(expect, vec![2, 0]);
    assert_eq!(separable_closure_step(4, 1).unwrap().deg(), 1);
    assert!(separable_closure_step(6, 2).is_err());
}

#[test]
fn session_round_trip() {
    let base = zloc(5);
    let (t, u) = base.adjoin_residue_extension(&base_poly(&base, "[-2,0,1]")).unwrap();
    let pr = PolyRing::new(t.clone());
    let inv = t.inverse(&t.add(&t.one(), &u)).unwrap();
    let f = pr.poly(vec![t.mul(&t.from_int(5), &inv), t.one(), t.one()]);
    let t2 = t.adjoin_hensel_root(&f).unwrap().ring;
    let record = t2.to_record();
    let text = record.to_json_string();
    let back = TowerRecord::from_json_str(&text).unwrap();
    assert_eq!(back, record);
    let rebuilt = back.build().unwrap();
    assert_eq!(rebuilt.rank(), t2.rank());
    assert_eq!(rebuilt.residue_field().unwrap(), t2.residue_field().unwrap());
    let x = t2.adjoined(1);
    let json = t2.element_to_json(&x);
    assert_eq!(rebuilt.element_from_json(&json).unwrap(), x);
    assert!(TowerRecord::from_json_str("{\"base\":3}").is_err());
}

fn small_int() -> impl Strategy<Value = i64> {
    -30i64..30
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn base_units_stay_units(n in small_int(), d in 1i64..40) {
        let AdjoinedRoot { ring: t, .. } = golden();
        let zl = RingSpec::localized_integers(5).unwrap();
        let Ok(v) = zl.from_rational(&q(n, d)) else { return Ok(()); };
        prop_assert_eq!(t.is_unit(&t.constant(&v)).unwrap(), zl.is_unit(&v).unwrap());
    }

    #[test]
    fn equality_is_a_congruence(a in prop::collection::vec(small_int(), 4),
                                b in prop::collection::vec(small_int(), 4),
                                c in prop::collection::vec(small_int(), 4)) {
        let base = zloc(5);
        let t = base.adjoin_hensel_root(&base_poly(&base, "[0,1,1]")).unwrap().ring;
        let t = t.adjoin_hensel_root(&base_poly(&t, "[-5,1,1]")).unwrap().ring;
        let el = |v: &[i64]| TowerElement { num: v.iter().map(|&x| t.base().from_int(x)).collect(), den: t.one_vec() };
        let (a, b, c) = (el(&a), el(&b), el(&c));
        let map = TowerMap::into_spec(&t, &padic(5, 10)).unwrap();
        let eq = t.tower_eq(&a, &b).unwrap();
        if eq {
            prop_assert_eq!(map.apply(&a).unwrap(), map.apply(&b).unwrap());
            prop_assert!(t.tower_eq(&t.mul(&a, &c), &t.mul(&b, &c)).unwrap());
            prop_assert!(t.tower_eq(&t.add(&a, &c), &t.add(&b, &c)).unwrap());
        }
        if map.apply(&a).unwrap() != map.apply(&b).unwrap() {
            prop_assert!(!eq);
        }
        prop_assert_eq!(eq, t.is_zero(&t.sub(&a, &b)));
    }
}

mod common;

use common::{i, r, z};
use jbeta_core::centralizer_embed::*;
use jbeta_core::endo_filt::end_function;
use jbeta_core::error::Error;
use jbeta_core::field_tower::{EMat, Elem, FieldTower};
use jbeta_core::herm_forms::{dual_lattice, HermForm};
use jbeta_core::arith::Rat;
use jbeta_core::latt_fun::{barycenter, LatticeFunction};
use jbeta_core::linalg::unit_vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    let d = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
    r(rng.gen_range(-2 * d..=2 * d), d)
}

fn random_point(decomp: &BetaDecomposition, rng: &mut ChaCha8Rng) -> CentralBuildingPoint {
    let apt = CentralApartment::new(decomp).unwrap();
    let (coords, shifts) = random_coords(decomp, &apt, rng);
    central_apartment_point(decomp, &apt, &coords, &shifts).unwrap()
}

fn random_coords(decomp: &BetaDecomposition, apt: &CentralApartment, rng: &mut ChaCha8Rng) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let coords: Vec<Vec<Rat>> = apt.ranks(decomp).iter().map(|&k| (0..k).map(|_| random_rat(rng)).collect()).collect();
    let shifts = coords.iter().map(|_| random_rat(rng)).collect();
    (coords, shifts)
}

fn split2(offsets: &[Rat], decomp: &BetaDecomposition) -> LatticeFunction {
    let n = decomp.dim();
    LatticeFunction::new((0..n).map(|k| unit_vec(n, k)).collect(), offsets.to_vec(), decomp.f_layer())
}

#[test]
fn block_classification() {
    let d = common::sp2_ramified();
    assert_eq!(d.blocks.len(), 1);
    assert_eq!(d.blocks[0].kind, BlockKind::Fixed);
    assert_eq!((d.blocks[0].layer.field.d, d.blocks[0].layer.field.e), (3, 2));

    let d = common::sp2_split();
    let kinds: Vec<BlockKind> = d.blocks.iter().map(|b| b.kind).collect();
    assert_eq!(kinds, vec![BlockKind::Plus, BlockKind::Minus]);
    assert_eq!(d.blocks[0].partner, Some(1));

    let d = common::sp4_mixed();
    let mut kinds: Vec<&str> = d.blocks.iter().map(|b| b.kind.name()).collect();
    kinds.sort();
    assert_eq!(kinds, vec!["J_+", "J_-", "J_o"]);

    let d = common::sp4_paired_quadratic();
    assert!(d.blocks.iter().all(|b| b.layer.field.d == 5 && b.kind != BlockKind::Fixed));
}

#[test]
fn idempotents_decompose_the_identity() {
    for s in common::all() {
        let d = &s.decomp;
        let n = d.dim();
        let mut sum = jbeta_core::linalg::Mat::zeros(n, n);
        for (a, ba) in d.blocks.iter().enumerate() {
            sum = sum.add(&ba.idempotent);
            for (b, bb) in d.blocks.iter().enumerate() {
                let prod = ba.idempotent.mul(&bb.idempotent);
                if a == b {
                    assert_eq!(prod, ba.idempotent, "{}", s.name);
                } else {
                    assert!(prod.is_zero(), "{}", s.name);
                }
            }
            let real = d.realified().unwrap();
            let sigma = real.adjoint(&ba.idempotent);
            let target = ba.partner.map_or(&ba.idempotent, |j| &d.blocks[j].idempotent);
            assert_eq!(&sigma, target, "{}", s.name);
        }
        assert_eq!(sum, jbeta_core::linalg::Mat::identity(n), "{}", s.name);
    }
}

#[test]
fn decomposition_errors() {
    let t = FieldTower::rational(3).unwrap();
    let form = HermForm::ambient(&t, -1, common::emat(&common::J, 0)).unwrap();
    let nil = common::emat(&[&[0, 1], &[0, 0]], 0);
    assert_eq!(decompose_beta(&form, &nil).err(), Some(Error::H1Violated));
    let not_lie = common::emat(&[&[1, 0], &[0, 1]], 0);
    assert_eq!(decompose_beta(&form, &not_lie).err(), Some(Error::NotInLieAlgebra));
    let split_at_p = common::emat(&[&[0, 1], &[7, 0]], 0);
    assert!(matches!(decompose_beta(&form, &split_at_p), Err(Error::DegenerateExtension(_))));
}

#[test]
fn induced_forms() {
    let d = common::sp2_ramified();
    let h = d.blocks[0].hi().unwrap();
    assert_eq!(h.gram[(0, 0)], Elem::sqrt_d(3));
    assert_eq!(h.eps, -1);

    let d = common::o2_anisotropic();
    let h = d.blocks[0].hi().unwrap();
    assert_eq!(h.gram[(0, 0)], z(1).with_layer(3));
    assert_eq!(h.eps, 1);
}

/// `h(v, w) = λ(h_i(v, w))` on random vectors of every fixed block.
#[test]
fn induced_form_descends() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in common::all() {
        let d = &s.decomp;
        let real = d.realified().unwrap();
        for b in d.blocks.iter().filter(|b| b.kind == BlockKind::Fixed) {
            let h = b.hi().unwrap();
            let lam = b.lambda.as_ref().unwrap();
            let rand_vec = |rng: &mut ChaCha8Rng| -> Vec<Elem> {
                (0..h.dim()).map(|_| Elem::new(i(rng.gen_range(-3..4)), i(rng.gen_range(-3..4)), h.layer.d)).collect()
            };
            for _ in 0..5 {
                let (x, y) = (rand_vec(&mut rng), rand_vec(&mut rng));
                let lhs = real.value(&h.to_ambient(&x), &h.to_ambient(&y));
                assert_eq!(lhs, lam.apply(&h.eval(&x, &y)), "{}", s.name);
                let sym = h.eval(&y, &x);
                let lhs2 = h.sigma(&h.eval(&x, &y)).scale(&i(h.eps as i64));
                assert_eq!(sym, lhs2, "{}", s.name);
            }
        }
    }
}

#[test]
fn ramified_image_is_the_barycenter() {
    let d = common::sp2_ramified();
    let x = standard_point(&d).unwrap();
    let j = j_beta(&d, &x).unwrap();
    assert!(j.same(&split2(&[r(-1, 4), r(1, 4)], &d)));
}

#[test]
fn split_image_and_equivariance() {
    let d = common::sp2_split();
    let apt = CentralApartment::new(&d).unwrap();
    for s in [r(1, 3), i(0), r(-5, 4)] {
        let x = central_apartment_point(&d, &apt, &[vec![s.clone()]], &[i(0)]).unwrap();
        let j = j_beta(&d, &x).unwrap();
        assert!(j.same(&split2(&[s.clone(), -s.clone()], &d)));
        let g = jbeta_core::linalg::Mat::from_rows(&[vec![i(3), i(0)], vec![i(0), r(1, 3)]]);
        let moved = central_apartment_point(&d, &apt, &[vec![&s + i(1)]], &[i(0)]).unwrap();
        assert!(j_beta(&d, &moved).unwrap().same(&j.transform(&g)));
    }
}

#[test]
fn images_are_self_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in common::all() {
        let real = s.decomp.realified().unwrap();
        for _ in 0..4 {
            let x = random_point(&s.decomp, &mut rng);
            let j = j_beta(&s.decomp, &x).unwrap();
            assert!(j.is_self_dual(&real.gram).unwrap(), "{}", s.name);
        }
    }
}

/// The function dual agrees with lattice duality at sampled `r`.
#[test]
fn function_dual_matches_lattice_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for s in common::all() {
        let real = s.decomp.realified().unwrap();
        let x = random_point(&s.decomp, &mut rng);
        let j = j_beta(&s.decomp, &x).unwrap();
        let j = j.shift(&r(1, 5));
        let dual = j.dual(&real.gram, None).unwrap();
        for k in -6..6 {
            let t = r(k, 6);
            let want = dual_lattice(&j.canonical().right_limit(&-t.clone()), real).unwrap();
            assert_eq!(dual.eval(&t), want, "{} at {}", s.name, t);
        }
    }
}

/// `j̃_β(x)^♯ = j̃_β(x^b)` on completed tuples whose paired parts are
/// unrelated.
#[test]
fn duality_commutes_with_the_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for s in common::all() {
        let d = &s.decomp;
        let real = d.realified().unwrap();
        for _ in 0..3 {
            let parts: Vec<LatticeFunction> = d
                .blocks
                .iter()
                .map(|b| LatticeFunction::new(b.basis.clone(), b.basis.iter().map(|_| random_rat(&mut rng)).collect(), b.layer.clone()))
                .collect();
            let lhs = j_tilde(d, &parts).dual(&real.gram, None).unwrap();
            let rhs = j_tilde(d, &tuple_dual(d, &parts).unwrap());
            assert!(lhs.same(&rhs), "{}", s.name);
        }
    }
}

#[test]
fn double_cross_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for s in common::all() {
        let d = &s.decomp;
        for (k, b) in d.blocks.iter().enumerate().filter(|(_, b)| b.kind == BlockKind::Plus) {
            let lam = LatticeFunction::new(b.basis.clone(), b.basis.iter().map(|_| random_rat(&mut rng)).collect(), b.layer.clone());
            let once = sharp_cross(d, k, &lam).unwrap();
            let twice = sharp_cross(d, b.partner.unwrap(), &once).unwrap();
            assert!(twice.same(&lam), "{}", s.name);
        }
    }
}

#[test]
fn affine_on_barycenters() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for s in common::all() {
        let d = &s.decomp;
        for t in [r(1, 4), r(1, 2), r(2, 3)] {
            let (x, y) = (random_point(d, &mut rng), random_point(d, &mut rng));
            let lhs = j_beta(d, &barycenter_points(&x, &y, &t).unwrap()).unwrap();
            let rhs = barycenter(&j_beta(d, &x).unwrap(), &j_beta(d, &y).unwrap(), &t).unwrap();
            assert!(lhs.same(&rhs), "{} at t = {}", s.name, t);
        }
    }
}

#[test]
fn injective_on_distinct_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for s in common::all() {
        let d = &s.decomp;
        let apt = CentralApartment::new(d).unwrap();
        if apt.ranks(d).iter().all(|&k| k == 0) {
            continue;
        }
        let (c1, sh) = random_coords(d, &apt, &mut rng);
        let mut c2 = c1.clone();
        let k = apt.ranks(d).iter().position(|&k| k > 0).unwrap();
        c2[k][0] = &c2[k][0] + r(1, 3);
        let x = central_apartment_point(d, &apt, &c1, &sh).unwrap();
        let y = central_apartment_point(d, &apt, &c2, &sh).unwrap();
        assert!(!j_beta(d, &x).unwrap().same(&j_beta(d, &y).unwrap()), "{}", s.name);
    }
}

#[test]
fn independence_of_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for s in common::all() {
        let d = &s.decomp;
        let pts: Vec<CentralBuildingPoint> = (0..3).map(|_| random_point(d, &mut rng)).collect();
        for u in [i(3), i(2), r(1, 3), i(-1)] {
            let rep = jbeta_form_independence(d, &u, &pts).unwrap();
            assert!(rep.holds(), "{} with u = {}", s.name, u);
        }
    }
    let d = common::sp2_split();
    let rep = jbeta_form_independence(&d, &i(3), &[standard_point(&d).unwrap()]).unwrap();
    assert_eq!(rep.shift, r(-1, 2));
    let d = common::u2_unramified();
    let sqrt2 = Elem::sqrt_d(2);
    let form = d.form.as_ref().unwrap();
    assert!(matches!(form.scaled(&sqrt2), Err(Error::NotEpsilonHermitian(_))));
}

#[test]
fn apartments_map_into_apartments() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for s in common::all() {
        let d = &s.decomp;
        let apt = CentralApartment::new(d).unwrap();
        let samples: Vec<_> = (0..20).map(|_| random_coords(d, &apt, &mut rng)).collect();
        let img = apartment_image(d, &apt, &samples).unwrap();
        assert!(img.all_split, "{}", s.name);
        assert_eq!(img.basis().len(), d.n());
    }
    let d = common::sp2_split();
    let apt = CentralApartment::new(&d).unwrap();
    let img = apartment_image(&d, &apt, &[]).unwrap();
    assert_eq!(img.index(), 1);
    let d = common::sp2_ramified();
    let apt = CentralApartment::new(&d).unwrap();
    assert_eq!(apt.ranks(&d), vec![0]);
    let d = common::sp4_ramified_rank1();
    let apt = CentralApartment::new(&d).unwrap();
    assert_eq!(apt.ranks(&d), vec![1]);
}

#[test]
fn centralizer_filtrations() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for s in common::all() {
        let d = &s.decomp;
        for _ in 0..3 {
            let x = random_point(d, &mut rng);
            assert!(centralizer_filtrations_agree(d, &x).unwrap(), "{}", s.name);
            assert_eq!(h_profile(d, &x).unwrap(), h_profile_from_tilde(d, &x).unwrap(), "{}", s.name);
        }
    }
}

#[test]
fn centralizer_dimension() {
    assert_eq!(centralizer_subspace(&common::sp2_ramified()).len(), 2);
    assert_eq!(lie_centralizer_subspace(&common::sp2_ramified()).unwrap().len(), 1);
    assert_eq!(lie_centralizer_subspace(&common::sp2_split()).unwrap().len(), 1);
    assert_eq!(lie_centralizer_subspace(&common::sp4_mixed()).unwrap().len(), 2);
}

#[test]
fn end_function_of_images_is_sigma_fixed() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for s in common::all() {
        let real = s.decomp.realified().unwrap();
        let j = j_beta(&s.decomp, &random_point(&s.decomp, &mut rng)).unwrap();
        let sq = end_function(&j, &[]);
        assert_eq!(sq.canonical(), sq.sigma(real).canonical(), "{}", s.name);
    }
}

#[test]
fn general_linear_blocks() {
    let t = FieldTower::rational(3).unwrap();
    let beta = EMat::from_rows(vec![vec![z(0), z(1)], vec![z(3), z(0)]], 0);
    let d = decompose_beta_gl(&t, &beta).unwrap();
    assert_eq!(d.blocks.len(), 1);
    assert!(d.form.is_none());
    assert_eq!(d.blocks[0].layer.field.e, 2);
}

#[test]
fn negative_controls() {
    let d = common::sp2_ramified();
    let j = j_beta(&d, &standard_point(&d).unwrap()).unwrap();
    assert!(is_split_by(&j, &[unit_vec(2, 0), unit_vec(2, 1)]));
    assert!(!is_split_by(&j, &[vec![i(1), i(1)], unit_vec(2, 1)]));

    let d = common::sp4_gl2();
    let apt = CentralApartment::new(&d).unwrap();
    let x = central_apartment_point(&d, &apt, &[vec![i(0), i(0)]], &[i(0)]).unwrap();
    let y = central_apartment_point(&d, &apt, &[vec![i(0), r(1, 3)]], &[i(0)]).unwrap();
    assert_ne!(h_profile(&d, &x).unwrap().jump_points(), h_profile(&d, &y).unwrap().jump_points());
    let real = d.realified().unwrap();
    let h = lie_centralizer_subspace(&d).unwrap();
    let gy = jbeta_core::endo_filt::lie_filtration(&j_beta(&d, &y).unwrap(), real);
    assert_ne!(gy.intersect(jbeta_core::endo_filt::FiltrationSpace::H, &h), h_profile(&d, &x).unwrap());
}

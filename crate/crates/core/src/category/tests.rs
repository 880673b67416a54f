use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::sample::*;
use super::*;
use crate::arith::{Param, Poly};
use crate::lattice::LatticeIndex;

fn cat(q: u32) -> InterpCategory {
    InterpCategory::new(FqField::from_order(q).unwrap(), Param::Symbolic)
}

fn t_pow(k: usize) -> Scalar {
    Param::Symbolic.t_pow(k)
}

fn log_q(q: u32, mut n: usize) -> usize {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % q as usize, 0);
        n /= q as usize;
        k += 1;
    }
    k
}

/// Composite of two relations by enumerating the pullback vector by vector.
fn brute_compose(field: &FqField, w: &Subspace, dx: usize, v: &Subspace, dz: usize) -> (Subspace, usize) {
    let dy = w.ambient() - dx;
    let mut pairs = 0;
    let mut image = Vec::new();
    for a in w.vectors(field) {
        for b in v.vectors(field) {
            if a[dx..] == b[..dy] {
                pairs += 1;
                let mut u = a[..dx].to_vec();
                u.extend_from_slice(&b[dy..]);
                image.push(u);
            }
        }
    }
    let u = Subspace::from_vectors(field, dx + dz, &image);
    let size = (field.q() as usize).pow(u.dim() as u32);
    (u, log_q(field.q(), pairs / size))
}

#[test]
fn full_composed_with_full_is_t_full() {
    let c = cat(2);
    let full = Morphism::relation(1, 1, Subspace::full(2)).unwrap();
    let expected = full.scale(&Scalar::t());
    assert_eq!(c.compose(&full, &full).unwrap(), expected);
}

#[test]
fn hom_dims_count_subspaces() {
    let c = cat(2);
    let g = SumObject::generator;
    assert_eq!(c.hom_dim(&g(1), &g(1)).unwrap(), 5);
    assert_eq!(c.hom_dim(&g(1), &g(2)).unwrap(), 16);
    assert_eq!(c.hom_dim(&g(2), &g(2)).unwrap(), 67);
    assert_eq!(c.hom_basis(&g(1), &g(1), 100).unwrap().len(), 5);
    assert!(c.hom_basis(&g(2), &g(2), 10).is_err());
}

#[test]
fn dimension_of_generator_is_power_of_t() {
    for q in [2, 3] {
        let c = cat(q);
        for d in 0..4 {
            let x = GenObject(d);
            let closed = c.compose(&c.ev(x), &c.delta(x)).unwrap();
            assert_eq!(closed.as_scalar().unwrap(), t_pow(d));
            assert_eq!(c.trace(&c.identity(&x.into())).unwrap(), t_pow(d));
        }
    }
}

#[test]
fn composition_matches_vector_enumeration() {
    let mut rng = StdRng::seed_from_u64(1);
    for q in [2, 3, 4] {
        let c = cat(q);
        let field = c.field().clone();
        for _ in 0..150 {
            let (dx, dy, dz) = (rng.random_range(0..3), rng.random_range(0..3), rng.random_range(0..3));
            let w = random_subspace(&field, &mut rng, dx + dy);
            let v = random_subspace(&field, &mut rng, dy + dz);
            let fast = c.compose_relations(&w, dx, &v, dz).unwrap();
            assert_eq!(fast, brute_compose(&field, &w, dx, &v, dz));
        }
    }
}

#[test]
fn identity_and_associativity_on_sums() {
    let mut rng = StdRng::seed_from_u64(2);
    for q in [2, 3] {
        let c = cat(q);
        for _ in 0..40 {
            let objs: Vec<SumObject> = (0..4)
                .map(|_| {
                    let n = rng.random_range(1..3);
                    SumObject::new((0..n).map(|_| rng.random_range(0..3)).collect())
                })
                .collect();
            let f = random_morphism(&c, &mut rng, &objs[0], &objs[1], 3);
            let g = random_morphism(&c, &mut rng, &objs[1], &objs[2], 3);
            let h = random_morphism(&c, &mut rng, &objs[2], &objs[3], 3);
            assert_eq!(c.compose(&c.identity(&objs[1]), &f).unwrap(), f);
            assert_eq!(c.compose(&f, &c.identity(&objs[0])).unwrap(), f);
            let left = c.compose(&c.compose(&h, &g).unwrap(), &f).unwrap();
            let right = c.compose(&h, &c.compose(&g, &f).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn compose_rejects_mismatched_objects() {
    let c = cat(2);
    let f = c.identity(&SumObject::generator(1));
    let g = c.identity(&SumObject::generator(2));
    assert!(matches!(c.compose(&g, &f), Err(Error::ObjectMismatch(_))));
    assert!(matches!(
        c.trace(&Morphism::relation(1, 2, Subspace::zero(3)).unwrap()),
        Err(Error::NotEndomorphism)
    ));
}

#[test]
fn class_of_correspondence_examples() {
    let c = cat(2);
    let field = c.field().clone();
    // F_2 -> 0 ⊕ 0 has a one-dimensional kernel
    let degenerate = Correspondence::new(FqMatrix::zeros(0, 1), FqMatrix::zeros(0, 1)).unwrap();
    let class = c.class_of_correspondence(&degenerate).unwrap();
    assert_eq!(class.as_scalar().unwrap(), Scalar::t());
    // id ⊕ 0 is the relation x ⊕ 0
    let mono = Correspondence::new(FqMatrix::identity(2), FqMatrix::zeros(1, 2)).unwrap();
    let class = c.class_of_correspondence(&mono).unwrap();
    let x0 = Subspace::from_rows(&field, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    assert_eq!(class, Morphism::relation(2, 1, x0).unwrap());
    assert!(Correspondence::new(FqMatrix::zeros(1, 2), FqMatrix::zeros(1, 1)).is_err());
}

#[test]
fn classes_do_not_depend_on_representatives() {
    let mut rng = StdRng::seed_from_u64(3);
    for q in [2, 3] {
        let c = cat(q);
        let field = c.field().clone();
        for _ in 0..60 {
            let (dx, dy, dz) = (rng.random_range(0..3), rng.random_range(0..3), rng.random_range(0..3));
            let w = random_subspace(&field, &mut rng, dx + dy);
            let v = random_subspace(&field, &mut rng, dy + dz);
            let (k1, k2) = (rng.random_range(0..3), rng.random_range(0..3));
            let a = random_representative(&field, &mut rng, &w, dx, k1);
            let b = random_representative(&field, &mut rng, &v, dy, k2);
            let ca = c.class_of_correspondence(&a).unwrap();
            assert_eq!(ca, Morphism::relation(dx, dy, w.clone()).unwrap().scale(&t_pow(k1)));
            let cb = c.class_of_correspondence(&b).unwrap();
            let raw = c.class_of_correspondence(&a.compose(&field, &b).unwrap()).unwrap();
            assert_eq!(c.compose(&cb, &ca).unwrap(), raw);
        }
    }
}

#[test]
fn graph_embedding_is_functorial() {
    let mut rng = StdRng::seed_from_u64(4);
    let c = cat(3);
    let field = c.field().clone();
    assert_eq!(c.embed_graph(&FqMatrix::identity(2)), c.identity(&SumObject::generator(2)));
    let zero = c.embed_graph(&FqMatrix::zeros(1, 2));
    let x0 = Subspace::from_rows(&field, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    assert_eq!(zero, Morphism::relation(2, 1, x0).unwrap());
    for _ in 0..50 {
        let (a, b, d) = (rng.random_range(0..3), rng.random_range(0..3), rng.random_range(0..3));
        let f = random_matrix(&field, &mut rng, b, a);
        let g = random_matrix(&field, &mut rng, d, b);
        let gf = g.mul(&field, &f).unwrap();
        assert_eq!(
            c.compose(&c.embed_graph(&g), &c.embed_graph(&f)).unwrap(),
            c.embed_graph(&gf)
        );
    }
}

#[test]
fn braiding_snakes_and_units() {
    let c = cat(2);
    for a in 0..3 {
        for b in 0..3 {
            let (x, y) = (GenObject(a), GenObject(b));
            let twice = c.compose(&c.braiding(y, x), &c.braiding(x, y)).unwrap();
            assert_eq!(twice, c.identity(&SumObject::generator(a + b)));
        }
        let x = GenObject(a);
        assert_eq!(c.braiding(GenObject(0), x), c.identity(&x.into()));
        let id = c.identity(&x.into());
        let right = c.compose(&c.tensor(&c.ev(x), &id), &c.tensor(&id, &c.delta(x))).unwrap();
        assert_eq!(right, id);
        let left = c.compose(&c.tensor(&id, &c.ev(x)), &c.tensor(&c.delta(x), &id)).unwrap();
        assert_eq!(left, id);
        let unit = c.identity(&SumObject::unit());
        assert_eq!(c.tensor(&unit, &id), id);
    }
}

#[test]
fn tensor_interchange_and_braiding_naturality() {
    let mut rng = StdRng::seed_from_u64(5);
    let c = cat(2);
    for _ in 0..60 {
        let d: Vec<usize> = (0..4).map(|_| rng.random_range(0..3)).collect();
        let f = random_basis_morphism(&c, &mut rng, d[0], d[1]);
        let g = random_basis_morphism(&c, &mut rng, d[2], d[3]);
        let id_x2 = c.identity(&SumObject::generator(d[2]));
        let id_y1 = c.identity(&SumObject::generator(d[1]));
        let lhs = c.compose(&c.tensor(&id_y1, &g), &c.tensor(&f, &id_x2)).unwrap();
        assert_eq!(lhs, c.tensor(&f, &g));
        let before = c.compose(&c.braiding(GenObject(d[1]), GenObject(d[3])), &c.tensor(&f, &g)).unwrap();
        let after = c.compose(&c.tensor(&g, &f), &c.braiding(GenObject(d[0]), GenObject(d[2]))).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn trace_counts_diagonal_intersection() {
    let mut rng = StdRng::seed_from_u64(6);
    for q in [2, 3] {
        let c = cat(q);
        let field = c.field().clone();
        for _ in 0..80 {
            let d = rng.random_range(0..3);
            let w = random_subspace(&field, &mut rng, 2 * d);
            let f = Morphism::relation(d, d, w.clone()).unwrap();
            let k = w.meet(&field, &diagonal(d)).unwrap().dim();
            assert_eq!(c.trace(&f).unwrap(), t_pow(k));
            assert_eq!(c.left_trace(&f).unwrap(), t_pow(k));
        }
        let s = Scalar::from_int(7).mul(&Scalar::t());
        assert_eq!(c.trace(&Morphism::scalar(s.clone())).unwrap(), s);
    }
}

#[test]
fn trace_is_cyclic_and_multiplicative() {
    let mut rng = StdRng::seed_from_u64(7);
    let c = cat(2);
    for _ in 0..40 {
        let x = SumObject::new(vec![rng.random_range(0..3), rng.random_range(0..2)]);
        let y = SumObject::generator(rng.random_range(0..3));
        let f = random_morphism(&c, &mut rng, &x, &y, 3);
        let g = random_morphism(&c, &mut rng, &y, &x, 3);
        let fg = c.trace(&c.compose(&f, &g).unwrap()).unwrap();
        let gf = c.trace(&c.compose(&g, &f).unwrap()).unwrap();
        assert_eq!(fg, gf);
        let e1 = random_morphism(&c, &mut rng, &y, &y, 2);
        let e2 = random_morphism(&c, &mut rng, &x, &x, 2);
        let product = c.trace(&e1).unwrap().mul(&c.trace(&e2).unwrap());
        assert_eq!(c.trace(&c.tensor(&e1, &e2)).unwrap(), product);
    }
}

#[test]
fn gram_of_unit_and_line() {
    let c = cat(2);
    let g = c
        .gram_pairing(&SumObject::unit(), &SumObject::generator(1), 100)
        .unwrap();
    let one = Scalar::one();
    assert_eq!(g.entries, vec![vec![one.clone(), one.clone()], vec![one, Scalar::t()]]);
    let unit = c.gram_pairing(&SumObject::unit(), &SumObject::unit(), 1).unwrap();
    assert_eq!(unit.entries, vec![vec![Scalar::one()]]);
}

#[test]
fn core_examples_and_iso_split() {
    let c = cat(2);
    let field = c.field().clone();
    let mut rng = StdRng::seed_from_u64(8);
    for l in 0..3 {
        let g = random_invertible(&field, &mut rng, l);
        assert_eq!(core_and_length(&field, &graph(&field, &g), l).core_dim, l);
        assert_eq!(core_and_length(&field, &Subspace::zero(2 * l), l).core_dim, 0);
        assert_eq!(core_and_length(&field, &Subspace::full(2 * l + 1), l).core_dim, 0);
    }
    let (iso, rest) = c.isom_split(GenObject(1), GenObject(1));
    assert_eq!((iso.len(), rest.len()), (1, 4));
    assert_eq!(iso[0], diagonal(1));
    let (iso, rest) = c.isom_split(GenObject(2), GenObject(2));
    assert_eq!((iso.len(), rest.len()), (6, 61));
    assert!(c.isom_split(GenObject(1), GenObject(2)).0.is_empty());
}

#[test]
fn relations_factor_through_their_core() {
    for q in [2, 3] {
        let c = cat(q);
        let field = c.field().clone();
        for n in 0..4 {
            for dx in 0..=n {
                for w in all_subspaces(&field, n) {
                    let (v1, v2, core) = core_factorization(&field, &w, dx).unwrap();
                    assert_eq!(core, core_and_length(&field, &w, dx).core_dim);
                    assert_eq!(c.compose_relations(&v1, dx, &v2, n - dx).unwrap(), (w, 0));
                }
            }
        }
    }
}

#[test]
fn lattice_idempotents_form_the_mobius_algebra() {
    let c = cat(2);
    for d in 0..3 {
        let idem = c.lattice_idempotents(GenObject(d)).unwrap();
        let lat: &LatticeIndex = idem.lattice();
        let x = SumObject::generator(d);
        let mut total = Morphism::zero(x.clone(), x.clone());
        for i in 0..idem.len() {
            assert_eq!(c.trace(idem.delta(i)).unwrap(), t_pow(lat.get(i).dim()));
            for j in 0..idem.len() {
                let meet = lat.meet_index(i, j);
                assert_eq!(c.compose(idem.delta(i), idem.delta(j)).unwrap(), *idem.delta(meet));
                let prod = c.compose(idem.primitive(i), idem.primitive(j)).unwrap();
                if i == j {
                    assert_eq!(prod, *idem.primitive(i));
                } else {
                    assert!(prod.is_zero());
                }
            }
            let p: Poly = lat.p_poly(lat.get(i)).unwrap();
            assert_eq!(c.trace(idem.primitive(i)).unwrap(), Scalar::from_poly(p));
            total = total.add(idem.primitive(i)).unwrap();
        }
        assert_eq!(total, c.identity(&x));
    }
}

/// `dim Hom([a]^*, [b]^*)` by inverting
/// `#subspaces(F_q^{a+b}) = Σ_{i,j} [a i]_q [b j]_q h(i, j)`.
fn piece_hom_dims(q: u32, n: usize) -> Vec<Vec<i128>> {
    let gb = |a: usize, i: usize| crate::lattice::gaussian_binomial(a, i, q).unwrap() as i128;
    let mut h = vec![vec![0i128; n + 1]; n + 1];
    for a in 0..=n {
        for b in 0..=n {
            let mut rest = subspace_count(a + b, q).unwrap() as i128;
            for i in 0..=a {
                for j in 0..=b {
                    if (i, j) != (a, b) {
                        rest -= gb(a, i) * gb(b, j) * h[i][j];
                    }
                }
            }
            h[a][b] = rest;
        }
    }
    h
}

#[test]
fn lattice_pieces_have_expected_hom_dims() {
    let c = cat(2);
    let h = piece_hom_dims(2, 2);
    assert_eq!(h[1][1], 2);
    for d in 0..3 {
        let idem = c.lattice_idempotents(GenObject(d)).unwrap();
        let lat = idem.lattice();
        let pieces: Vec<CutObject> = (0..idem.len()).map(|i| idem.cut_object(&c, i).unwrap()).collect();
        for (i, a) in pieces.iter().enumerate() {
            for (j, b) in pieces.iter().enumerate() {
                let basis = CutObject::hom_basis(&c, a, b, 100).unwrap();
                let expected = h[lat.get(i).dim()][lat.get(j).dim()];
                assert_eq!(basis.len() as i128, expected);
                for f in &basis {
                    assert!(CutObject::contains(&c, a, b, f).unwrap());
                }
            }
        }
    }
    let not_idem = Morphism::relation(1, 1, Subspace::full(2)).unwrap();
    assert!(matches!(CutObject::new(&c, not_idem), Err(Error::NotIdempotent)));
}

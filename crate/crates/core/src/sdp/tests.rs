use super::sdpa::{parse_solver_output, sdpa_problem};
use super::*;
use crate::rep::perm_matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn successor_map(word: &[usize]) -> Vec<usize> {
    let m = word.len();
    let mut s = vec![0; m + 1];
    for p in 0..m {
        s[word[p]] = word[(p + 1) % m];
    }
    s
}

/// Distances computed on successor maps with Floyd–Warshall. Swapping the
/// adjacent entries `a → b` turns `p → a → b → q` into `p → b → a → q`.
fn oracle_distances(m: usize) -> Vec<Vec<u32>> {
    let cycles = cycle_set(m).unwrap();
    let maps: Vec<Vec<usize>> = cycles.iter().map(|w| successor_map(w)).collect();
    let n = maps.len();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (u, s) in maps.iter().enumerate() {
        d[u][u] = 0;
        for a in 1..=m {
            let b = s[a];
            let q = s[b];
            let p = (1..=m).find(|&x| s[x] == a).unwrap();
            let mut t = s.clone();
            if p == b {
                // m = 2 style wrap; cannot happen for m >= 3
                continue;
            }
            t[p] = b;
            t[b] = a;
            t[a] = q;
            let v = maps.iter().position(|x| *x == t).unwrap();
            d[u][v] = d[u][v].min(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Orbit count on ordered pairs by union–find over all group elements.
fn oracle_orbital_count(group: &PermGroup) -> usize {
    let n = group.degree();
    let elements = crate::rep::Group::new(group.clone()).elements(1 << 20).unwrap();
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in &elements {
        for i in 0..n {
            for j in 0..n {
                let a = find(&mut parent, i * n + j);
                let b = find(&mut parent, g.apply(i) * n + g.apply(j));
                parent[a] = b;
            }
        }
    }
    (0..n * n).filter(|&x| find(&mut parent, x) == x).count()
}

fn int_entry(m: &Matrix, i: usize, j: usize) -> i64 {
    let q = m[(i, j)].as_rational().unwrap();
    q.to_i64_pair().unwrap().0
}

#[test]
fn cycle_counts() {
    assert_eq!(cycle_set(3).unwrap(), vec![vec![1, 2, 3], vec![1, 3, 2]]);
    assert_eq!(cycle_set(5).unwrap().len(), 24);
    assert_eq!(cycle_set(7).unwrap().len(), 720);
    let c6 = cycle_set(6).unwrap();
    assert_eq!(c6.len(), 120);
    assert!(c6.windows(2).all(|w| w[0] < w[1]));
    assert!(cycle_set(2).is_err());
    assert!(cycle_set(9).is_err());
}

#[test]
fn distances_match_successor_oracle() {
    for m in 3..=6 {
        assert_eq!(interchange_distances(m).unwrap(), oracle_distances(m), "m = {m}");
    }
}

#[test]
fn interchange_examples() {
    // (1423) and (4123) = (1234) differ by one interchange
    let cycles = cycle_set(4).unwrap();
    let a = cycles.iter().position(|w| *w == vec![1, 4, 2, 3]).unwrap();
    let b = cycles.iter().position(|w| *w == vec![1, 2, 3, 4]).unwrap();
    assert_eq!(interchange_distances(4).unwrap()[a][b], 1);

    // C_{σ,τ} is the distance from σ to τ⁻¹, so C_{σ,σ⁻¹} = 0 and for m = 3
    // the single swap (123) → (132) = (123)⁻¹ puts the ones on the diagonal
    let c3 = interchange_distance_matrix(3).unwrap();
    assert_eq!(c3, Matrix::from_ints(&[&[1, 0], &[0, 1]]));
}

#[test]
fn distance_matrix_structure() {
    for m in 3..=6 {
        let cycles = cycle_set(m).unwrap();
        let c = interchange_distance_matrix(m).unwrap();
        let n = cycles.len();
        for s in 0..n {
            let inv = cycles.iter().position(|w| *w == normalise(&w_rev(&cycles[s]))).unwrap();
            assert_eq!(int_entry(&c, s, inv), 0);
        }
        assert_eq!(c, c.transpose(), "m = {m}");
    }
}

fn w_rev(w: &[usize]) -> Vec<usize> {
    w.iter().rev().copied().collect()
}

#[test]
fn max_distance_fixture_m5() {
    let c = interchange_distance_matrix(5).unwrap();
    let max = (0..24).flat_map(|i| (0..24).map(move |j| (i, j))).map(|(i, j)| int_entry(&c, i, j)).max().unwrap();
    let oracle = oracle_distances(5).into_iter().flatten().max().unwrap();
    assert_eq!(max, oracle as i64);
    assert_eq!(max, 4);
}

#[test]
fn c_and_j_commute_with_the_action() {
    for m in 3..=5 {
        let (inst, _) = crossing_instance(m).unwrap();
        for g in &inst.generators {
            let p = perm_matrix(g);
            assert_eq!(inst.c.mul(&p), p.mul(&inst.c), "m = {m}");
            assert_eq!(inst.j.mul(&p), p.mul(&inst.j));
        }
    }
}

#[test]
fn action_is_a_representation_of_the_product_group() {
    let (inst, _) = crossing_instance(5).unwrap();
    let rep = inst.action_representation().unwrap();
    rep.check_homomorphism(20, 3).unwrap();
    assert_eq!(rep.group().order(), 240);
}

#[test]
fn orbital_counts() {
    // m = 5 fixture from an independent union–find count
    let (_, sdp) = crossing_instance(5).unwrap();
    let r = reduce(&sdp, false).unwrap();
    assert_eq!(r.dim, oracle_orbital_count(&sdp.action));
    assert_eq!(r.dim, 8);
    let (_, sdp3) = crossing_instance(3).unwrap();
    assert_eq!(reduce(&sdp3, true).unwrap().dim, 2);
}

#[test]
fn m7_has_78_orbitals() {
    let (_, sdp) = crossing_instance(7).unwrap();
    let orb = crate::perm::orbitals(&sdp.action);
    assert_eq!(orb.len(), 78);
}

/// `E_k E_j = Σ_i (L_k)_{ij} √(n_k n_j / n_i) E_i` checked against exact
/// matrix products of the 0/1 orbital matrices.
#[test]
fn reconstruction_against_matrix_products() {
    for m in [4, 5] {
        let (_, sdp) = crossing_instance(m).unwrap();
        let r = reduce(&sdp, false).unwrap();
        let orb = crate::perm::orbitals(&sdp.action);
        let n = orb.degree();
        let e: Vec<Matrix> = orb.orbitals.iter().map(|o| o.adjacency(n)).collect();
        let sizes = &r.orbital_sizes;
        for k in 0..r.dim {
            for j in 0..r.dim {
                let mut sum = Matrix::zeros(n, n);
                for i in 0..r.dim {
                    let f = Surd::sqrt(&Rational::new((sizes[k] * sizes[j]) as i64, sizes[i] as i64)).unwrap();
                    let coeff = (r.l[k].get(i, j) * &f).as_rational().expect("integer intersection number");
                    sum.add_scaled_assign(&Cyclotomic::from_rational(coeff), &e[i]);
                }
                assert_eq!(sum, e[k].mul(&e[j]), "m = {m}, k = {k}, j = {j}");
            }
        }
    }
}

#[test]
fn identity_orbital_acts_as_scalar() {
    let (_, sdp) = crossing_instance(5).unwrap();
    for merge in [false, true] {
        let r = reduce(&sdp, merge).unwrap();
        let id = r.variables.iter().position(|v| v.len() == 1 && r.orbital_representatives[v[0]] == (0, 0)).unwrap();
        let s = Surd::sqrt(&Rational::new(1, 24)).unwrap();
        for i in 0..r.dim {
            for j in 0..r.dim {
                let want = if i == j { s.clone() } else { Surd::zero() };
                assert_eq!(r.l[id].get(i, j), &want);
            }
        }
    }
}

#[test]
fn merged_matrices_are_symmetric_and_paired_are_transposes() {
    let (_, sdp) = crossing_instance(5).unwrap();
    let merged = reduce(&sdp, true).unwrap();
    assert!(merged.merged);
    assert!(merged.l.iter().all(|l| l.is_symmetric()));
    assert_eq!(merged.eq_constraints.len(), 1);
    let plain = reduce(&sdp, false).unwrap();
    for i in 0..plain.d {
        assert_eq!(plain.l[plain.pairing[i]], plain.l[i].transpose());
    }
    let asym = (0..plain.d).filter(|&i| plain.pairing[i] != i).count();
    assert_eq!(merged.d, plain.d - asym / 2);
    assert_eq!(plain.eq_constraints.len(), 1 + asym / 2);
}

/// `tr(C X) = Σ c_v x_v` with `X = Σ x_v B_v` assembled entrywise.
#[test]
fn trace_identity_random_x() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for merge in [false, true] {
        let (inst, sdp) = crossing_instance(5).unwrap();
        let r = reduce(&sdp, merge).unwrap();
        let orb = crate::perm::orbitals(&sdp.action);
        for _ in 0..3 {
            let x: Vec<Surd> = (0..r.d).map(|_| Surd::from_rational(Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=9)))).collect();
            // coefficient of E_l in X
            let mut coef = vec![Surd::zero(); r.dim];
            for (v, members) in r.variables.iter().enumerate() {
                let total: usize = members.iter().map(|&l| r.orbital_sizes[l]).sum();
                for &l in members {
                    coef[l] = &x[v] * &Surd::sqrt(&Rational::new(1, total as i64)).unwrap();
                }
            }
            let n = orb.degree();
            let mut lhs = Surd::zero();
            for a in 0..n {
                for b in 0..n {
                    let cba = Rational::from_int(int_entry(&inst.c, b, a));
                    lhs = &lhs + &coef[orb.index_of(a, b)].scale(&cba);
                }
            }
            assert_eq!(lhs, r.objective(&x));
        }
    }
}

#[test]
fn invariance_guard_reports_witness() {
    let (_, mut sdp) = crossing_instance(4).unwrap();
    sdp.c[(0, 1)] = Cyclotomic::from_int(17);
    match reduce(&sdp, true) {
        Err(Error::SdpNotInvariant { matrix, .. }) => assert_eq!(matrix, "C"),
        other => panic!("expected invariance failure, got {other:?}"),
    }
}

#[test]
fn m3_reduction_by_hand() {
    let (_, sdp) = crossing_instance(3).unwrap();
    let r = reduce(&sdp, true).unwrap();
    assert_eq!((r.d, r.dim), (2, 2));
    let r2 = Surd::sqrt(&Rational::from_int(2)).unwrap();
    assert_eq!(r.c, vec![r2.clone(), Surd::zero()]);
    assert_eq!(r.eq_constraints[0].0, vec![r2.clone(), r2]);
    let mut text = Vec::new();
    write_sdpa_to(&r, &mut text).unwrap();
    let p = parse_sdpa(std::str::from_utf8(&text).unwrap()).unwrap();
    assert_eq!(p.block_sizes, vec![2, 1, 1, -2]);
    // L_0 = I/√2: two entries; L_1 = offdiag 1/√2: one upper entry;
    // each equality block has F_0 and two coefficients; x ≥ 0 adds two
    assert_eq!(p.entries.iter().filter(|e| e.1 == 1).count(), 3);
    assert_eq!(p.entries.len(), 3 + 2 * 3 + 2);
}

#[test]
fn sdpa_round_trip() {
    for (m, merge) in [(4, true), (5, true), (5, false)] {
        let (_, sdp) = crossing_instance(m).unwrap();
        let r = reduce(&sdp, merge).unwrap();
        let mut text = Vec::new();
        write_sdpa_to(&r, &mut text).unwrap();
        let text = String::from_utf8(text).unwrap();
        assert!(text.lines().take_while(|l| l.starts_with('*')).count() >= r.d);
        let parsed = parse_sdpa(&text).unwrap();
        let exact = sdpa_problem(&r);
        assert_eq!(parsed.m, exact.m);
        assert_eq!(parsed.block_sizes, exact.block_sizes);
        assert_eq!(parsed.entries.len(), exact.entries.len());
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-15 * a.abs().max(1.0);
        assert!(parsed.c.iter().zip(&exact.c).all(|(a, b)| close(*a, *b)));
        for (a, b) in parsed.entries.iter().zip(&exact.entries) {
            assert_eq!((a.0, a.1, a.2, a.3), (b.0, b.1, b.2, b.3));
            assert!(a.2 <= a.3);
            assert!(close(a.4, b.4), "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn degenerate_program() {
    let sdp = InvariantSDP {
        c: Matrix::from_ints(&[&[3]]),
        constraints: vec![(Matrix::from_ints(&[&[1]]), Rational::one())],
        nonneg: true,
        action: PermGroup::trivial(1),
    };
    let r = reduce(&sdp, true).unwrap();
    assert_eq!(r.d, 1);
    let mut text = Vec::new();
    write_sdpa_to(&r, &mut text).unwrap();
    let text = String::from_utf8(text).unwrap();
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('*')).collect();
    assert_eq!(body[..4], ["1", "4", "1 1 1 -1", "3.0"]);
    let p = parse_sdpa(&text).unwrap();
    assert_eq!(p, sdpa_problem(&r));
}

#[test]
fn parser_diagnostics() {
    assert!(parse_sdpa("").is_err());
    let e = parse_sdpa("1\n1\n2\n1.0\n1 1 3 3 1.0\n").unwrap_err();
    assert!(e.to_string().contains("line 5"), "{e}");
    let p = parse_sdpa("\"title\n2 =mdim\n1\n{2}\n{1.0, 2.0}\n0 1 1 1 1.0\n").unwrap();
    assert_eq!(p.c, vec![1.0, 2.0]);
}

#[test]
fn solver_output_parsing() {
    let csdp = "Iter:  9 Ap: 1.00e+00 ...\nSuccess: SDP solved\nPrimal objective value: 1.9472133720e+00 \nDual objective value: 1.9472133721e+00 \n";
    let r = parse_solver_output(csdp).unwrap();
    assert_eq!(r.status, "success");
    assert!((r.objective - 1.9472133721).abs() < 1e-12);
    let sdpa = "phase.value  = pdOPT\n   objValPrimal = 2.5000e-01\n   objValDual   = 2.5000e-01\n";
    assert_eq!(parse_solver_output(sdpa).unwrap().objective, 0.25);
    assert!(parse_solver_output("nothing here").is_err());
}

#[test]
fn missing_solver_is_reported() {
    let err = solve_external(std::path::Path::new("x.dat-s"), "definitely-not-a-solver-binary").unwrap_err();
    assert!(err.to_string().contains("not found"), "{err}");
}

#[test]
fn bound_arithmetic() {
    assert_eq!(zarankiewicz(3, 2), 0);
    assert_eq!(zarankiewicz(5, 5), 16);
    assert_eq!(zarankiewicz(7, 7), 81);
    let ratio = limit_ratio(7, 4.3693933617464, None);
    assert!((ratio - 0.83226).abs() < 1e-5, "{ratio}");
    assert!(limit_ratio(7, 4.3693933617464, Some(100)) > ratio);
    // α_3 = 1/2 reproduces the exact K_{3,n} count asymptotically
    let b = crossing_bound(3, 100, 3, 0.5).unwrap();
    assert_eq!(b, 0.25 * 100.0 * 100.0 - 0.5 * 100.0);
    assert!(crossing_bound(5, 10, 6, 2.0).is_err());
}

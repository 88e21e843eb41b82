//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::time::Instant;

use perdom::cohom::{self, DimPoly, GroupDatum, OrbitSet, Twist};
use perdom::complex;
use perdom::finflag::{self, enumerate_subspaces, Field, ENUMERATION_BUDGET};
use perdom::rootdata::{CartanComponent, Family};
use perdom::semistable::{filtration_pairing, Filtration, Verifier};
use perdom::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn a(n: usize) -> Vec<CartanComponent> {
    vec![CartanComponent::new(Family::A, n)]
}

fn split(types: Vec<CartanComponent>, mu: &[i64]) -> GroupDatum {
    GroupDatum::new(&types, None, mu).unwrap()
}

fn twisted(n: usize, mu: &[i64]) -> GroupDatum {
    let twist = Twist { perm: (0..n).rev().collect(), order: 2 };
    GroupDatum::new(&a(n), Some(&twist), mu).unwrap()
}

fn catalog() -> Vec<(&'static str, GroupDatum)> {
    let b2 = || vec![CartanComponent::new(Family::B, 2)];
    let a1a1 = || vec![CartanComponent::new(Family::A, 1), CartanComponent::new(Family::A, 1)];
    vec![
        ("A1 (1,-1)", split(a(1), &[1, -1])),
        ("A2 (1,0,-1)", split(a(2), &[1, 0, -1])),
        ("A2 (2,-1,-1)", split(a(2), &[2, -1, -1])),
        ("A3 (1,0,0,-1)", split(a(3), &[1, 0, 0, -1])),
        ("A3 (1,1,-1,-1)", split(a(3), &[1, 1, -1, -1])),
        ("A3 (3,1,-1,-3)", split(a(3), &[3, 1, -1, -3])),
        ("B2 (1,0)", split(b2(), &[1, 0])),
        ("B2 (2,1)", split(b2(), &[2, 1])),
        ("A1xA1 (1,-1,1,-1)", split(a1a1(), &[1, -1, 1, -1])),
        ("2A2 (1,0,-1)", twisted(2, &[1, 0, -1])),
        ("2A2 (2,-1,-1)", twisted(2, &[2, -1, -1])),
        ("2A3 (1,0,0,-1)", twisted(3, &[1, 0, 0, -1])),
        ("2A3 (1,1,-1,-1)", twisted(3, &[1, 1, -1, -1])),
        ("A2 central (0,0,0)", split(a(2), &[0, 0, 0])),
    ]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Check {
    let catalog = catalog();
    let failing: Vec<String> = catalog
        .iter()
        .filter(|(_, d)| !cohom::assemble_cohomology(d).has_vanishing_shape())
        .map(|(name, d)| {
            let degrees: Vec<usize> = cohom::assemble_cohomology(d).by_degree.keys().copied().collect();
            format!("{name}: d'={} but nonzero degrees are {degrees:?}", d.d_prime())
        })
        .collect();
    ensure(failing.is_empty(), || failing.join("; "))?;
    Ok(format!("{} instances", catalog.len()))
}

fn criterion_2() -> Check {
    let catalog = catalog();
    for (name, d) in &catalog {
        let table = cohom::assemble_cohomology(d);
        ensure(cohom::euler_characteristic(&table) == cohom::euler_formula(d), || {
            format!("{name}: alternating sum differs from the orbit formula")
        })?;
    }
    Ok(format!("{} instances", catalog.len()))
}

fn series_vs_brute(data: &GroupDatum, q: u64, ms: &[u32], closed: impl Fn(i128, u32) -> Option<i128>) -> Check {
    let table = cohom::assemble_cohomology(data);
    let v = Verifier::new(data, q, ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
    v.dims_guard().map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for &m in ms {
        let series = cohom::lefschetz_series(&table, data, q, m).map_err(|e| e.to_string())?;
        let brute = v.brute_force_ss_count(m).map_err(|e| e.to_string())? as i128;
        ensure(series == brute, || format!("q={q} m={m}: series {series}, brute force {brute}"))?;
        if let Some(expected) = closed(q as i128, m) {
            ensure(series == expected, || format!("q={q} m={m}: closed form {expected}, series {series}"))?;
        }
        counts.push(brute.to_string());
    }
    Ok(format!("q={q}: [{}]", counts.join(",")))
}

fn criterion_3() -> Check {
    let data = split(a(1), &[1, -1]);
    let mut out = Vec::new();
    for q in [2, 3, 4, 5] {
        out.push(series_vs_brute(&data, q, &[1, 2, 3], |q, m| Some(q.pow(m) - q))?);
    }
    Ok(out.join(" "))
}

/// `#P²(F_{q^m})` minus the union of the `F_q`-rational lines, by
/// inclusion-exclusion over sets of lines.
fn p2_off_rational_lines(q: u64, m: u32) -> i128 {
    let base = Field::new(finflag::prime_power(q).unwrap().0, finflag::prime_power(q).unwrap().1).unwrap();
    let elements: Vec<_> = base.elements().collect();
    let normals: Vec<Vec<u32>> = enumerate_subspaces(3, 1, &elements, 1000)
        .unwrap()
        .into_iter()
        .map(|s| s.rows()[0].clone())
        .collect();
    let big = (q as i128).pow(m);
    let points = |dim: usize| (big.pow(dim as u32) - 1) / (big - 1);
    let mut union = 0i128;
    for mask in 1u32..(1 << normals.len()) {
        let chosen: Vec<Vec<u32>> = (0..normals.len()).filter(|i| mask & (1 << i) != 0).map(|i| normals[i].clone()).collect();
        let size = chosen.len();
        let rank = finflag::rref(&base, chosen, 3).1.len();
        let sign = if size % 2 == 1 { 1 } else { -1 };
        union += sign * points(3 - rank);
    }
    points(3) - union
}

fn criterion_4() -> Check {
    let data = split(a(2), &[2, -1, -1]);
    let closed = |q: i128, m: u32| q.pow(2 * m) - (q * q + q) * q.pow(m) + q.pow(3);
    let mut out = Vec::new();
    for q in [2u64, 3] {
        for m in 1..=3 {
            let geometric = p2_off_rational_lines(q, m);
            ensure(geometric == closed(q as i128, m), || {
                format!("q={q} m={m}: geometry oracle {geometric}, closed form {}", closed(q as i128, m))
            })?;
        }
        out.push(series_vs_brute(&data, q, &[1, 2, 3], |q, m| Some(closed(q, m)))?);
    }
    Ok(out.join(" "))
}

fn criterion_5() -> Check {
    series_vs_brute(&split(a(2), &[1, 0, -1]), 2, &[1, 2, 3], |_, _| None)
}

fn criterion_6() -> Check {
    let first = series_vs_brute(&twisted(2, &[1, 0, -1]), 2, &[1, 2, 3], |q, m| {
        (m % 2 == 1).then(|| q.pow(3 * m) - q.pow(3))
    })?;
    let second = series_vs_brute(&twisted(2, &[2, -1, -1]), 2, &[1, 2, 3], |_, _| None)?;
    Ok(format!("mu=(1,0,-1) {first}; mu=(2,-1,-1) {second}"))
}

fn criterion_7() -> Check {
    let mut checked = 0;
    for data in [split(a(1), &[1, -1]), split(a(2), &[1, 0, -1]), split(a(2), &[2, -1, -1])] {
        for q in [2u64, 3] {
            let v = Verifier::new(&data, q, ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
            for m in [1u32, 2] {
                let set = v.points(m).map_err(|e| e.to_string())?;
                for subset in OrbitSet::all(data.d_prime()) {
                    let check = v.bruhat_cells_check(&set, subset).map_err(|e| e.to_string())?;
                    let qm = (q as u128).pow(m);
                    let predicted: u128 = cohom::omega_i(&data, subset)
                        .iter()
                        .map(|&o| qm.pow(data.orbits[o].length as u32))
                        .sum();
                    ensure(check.equal && check.y_size == predicted, || {
                        format!("q={q} m={m} I={:?}: |Y_I|={} predicted {predicted}", data.label_set(subset), check.y_size)
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} strata"))
}

fn criterion_8() -> Check {
    let mut runs = vec![];
    for q in [2u64, 3] {
        for m in 1..=3 {
            runs.push((split(a(1), &[1, -1]), q, m));
        }
    }
    for m in 1..=2 {
        runs.push((split(a(2), &[1, 0, -1]), 2, m));
        runs.push((split(a(2), &[2, -1, -1]), 2, m));
        runs.push((twisted(2, &[1, 0, -1]), 2, m));
        runs.push((twisted(2, &[2, -1, -1]), 2, m));
    }
    let mut complexes = 0;
    for (data, q, m) in &runs {
        let v = Verifier::new(data, *q, ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
        let report = complex::acyclicity_sweep(&v, *m, true).map_err(|e| e.to_string())?;
        ensure(report.acyclic(), || format!("q={q} m={m}: nonzero reduced homology at points {:?}", report.violations))?;
        complexes += report.unstable;
    }
    Ok(format!("{} sweeps, {complexes} complexes", runs.len()))
}

fn criterion_9() -> Check {
    let catalog = catalog();
    for (name, d) in &catalog {
        ensure(d.kostant.len() * d.stabilizer.len() == d.weyl.order(), || format!("{name}: Kostant count"))?;
        ensure(cohom::dim_v(d, OrbitSet::EMPTY) == DimPoly::monomial(d.root.positive_roots.len()), || {
            format!("{name}: Steinberg dimension")
        })?;
        let all: Vec<OrbitSet> = OrbitSet::all(d.d_prime()).collect();
        for &i in &all {
            let omega_i = cohom::omega_i(d, i);
            for &j in &all {
                let omega_j = cohom::omega_i(d, j);
                if i.is_subset(j) {
                    ensure(omega_i.iter().all(|o| omega_j.contains(o)), || format!("{name}: monotonicity"))?;
                }
                let meet: Vec<usize> = omega_i.iter().copied().filter(|o| omega_j.contains(o)).collect();
                ensure(cohom::omega_i(d, i.intersection(j)) == meet, || format!("{name}: meet law"))?;
            }
            for o in 0..d.orbits.len() {
                ensure(cohom::minimal_i(d, o).is_subset(i) == omega_i.contains(&o), || format!("{name}: I_[w] law"))?;
            }
        }
        for orbit in &d.orbits {
            let first = d.orbit_pairings(orbit.rep);
            ensure(orbit.members.iter().all(|&w| d.orbit_pairings(w) == first), || {
                format!("{name}: pairings depend on the orbit member")
            })?;
        }
        let factors: Vec<Rational> = (0..d.root.num_factors()).map(|f| Rational::new(2 * f as i64 + 3, 2)).collect();
        let rescaled = d.rescaled(&factors).map_err(|e| e.to_string())?;
        ensure(cohom::assemble_cohomology(&rescaled) == cohom::assemble_cohomology(d), || {
            format!("{name}: table changes under rescaling")
        })?;
    }
    let field = Field::new(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for trial in 0..200 {
        let rank = 1 + trial % 3;
        let data = split(a(rank), &vec![0; rank + 1]);
        let mut draw = || {
            let mut v: Vec<i64> = (0..rank).map(|_| rng.gen_range(-5..=5)).collect();
            v.push(-v.iter().sum::<i64>());
            v.into_iter().map(Rational::from).collect::<Vec<_>>()
        };
        let (l1, l2) = (draw(), draw());
        let f1 = Filtration::from_flag(&finflag::FlagPoint::coordinate(&field, &l1));
        let f2 = Filtration::from_flag(&finflag::FlagPoint::coordinate(&field, &l2));
        let pairing = filtration_pairing(&field, &f1, &f2).map_err(|e| e.to_string())?;
        ensure(pairing == data.inner.inner(&l1, &l2), || format!("torus pair {l1:?}, {l2:?}"))?;
    }
    Ok(format!("{} instances, 200 torus pairs", catalog.len()))
}

fn criterion_10() -> Check {
    let catalog = catalog();
    let mut checked = 0;
    for (name, d) in catalog.iter().filter(|(_, d)| d.is_split()) {
        let table = cohom::assemble_cohomology(d);
        let mut from_table: Vec<(usize, Vec<usize>, usize)> = table
            .summands()
            .map(|s| (s.degree, d.delta.simple_roots_in(&s.i_w.indices()), s.tate_twist))
            .collect();
        from_table.sort();
        ensure(from_table == cohom::split_formula_entries(d), || format!("{name}: split formula differs"))?;
        ensure(table.summands().all(|s| s.galois_dim == 1), || format!("{name}: nontrivial Galois part"))?;
        checked += 1;
    }
    Ok(format!("{checked} split instances"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("vanishing below d' and H^d' = v_B", criterion_1),
        ("Euler characteristic identity", criterion_2),
        ("SL_2 brute force vs Lefschetz", criterion_3),
        ("SL_3 mu=(2,-1,-1) brute force and P^2 oracle", criterion_4),
        ("SL_3 mu=(1,0,-1) brute force", criterion_5),
        ("U_3 brute force vs orbit-trace series", criterion_6),
        ("Y_I equals its Bruhat cells", criterion_7),
        ("destabilizing complexes are acyclic", criterion_8),
        ("structural and property checks", criterion_9),
        ("split formula regression", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS ({ms} ms) {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL ({ms} ms) {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

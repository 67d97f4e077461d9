use proptest::prelude::*;
use toric_core::classifier::census_polytopes;
use toric_core::polytope::normalized_volume_tetra;
use toric_core::toriccode::min_nonzero_weight;
use toric_core::*;

const ORDERS: [u32; 14] = [3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64];
const SMALL: [u32; 6] = [3, 4, 5, 7, 8, 9];

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// (s, t) with 1 <= t <= tmax, 0 <= s < t, gcd(s, t) = 1.
fn tetra_params(tmax: i64) -> impl Strategy<Value = (i64, i64)> {
    (1..=tmax)
        .prop_flat_map(|t| (0..t, Just(t)))
        .prop_filter("coprime", |&(s, t)| gcd(s, t) == 1)
}

fn census_code(q: u32, pick: prop::sample::Index) -> ToricCode {
    let mut pool = census_polytopes(q, CensusDim::Four).unwrap();
    if q >= 5 {
        pool.extend(census_polytopes(q, CensusDim::Five).unwrap());
    }
    build_code(&make_field(q).unwrap(), pick.get(&pool)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_laws(q in prop::sample::select(ORDERS.to_vec()), a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let f = make_field(q).unwrap();
        let (a, b, c) = (f.from_int(a % q), f.from_int(b % q), f.from_int(c % q));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.from_int(0));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            prop_assert_eq!(f.pow(a, (q - 1) as i64).unwrap(), FieldElement::ONE);
        }
        // Frobenius is additive
        let p = f.characteristic() as i64;
        prop_assert_eq!(f.pow(f.add(a, b), p).unwrap(), f.add(f.pow(a, p).unwrap(), f.pow(b, p).unwrap()));
    }

    #[test]
    fn power_maps(q in prop::sample::select(ORDERS.to_vec()), t in 1u32..80, a in 1u32..64) {
        let f = make_field(q).unwrap();
        let a = f.from_int(1 + a % (q - 1));
        let g = gcd(t as i64, (q - 1) as i64) as usize;
        let image = f.power_image(t);
        prop_assert_eq!(image.len(), (q as usize - 1) / g);
        let roots = f.solve_power(t, a).unwrap();
        prop_assert_eq!(roots.is_empty(), !image.contains(&a));
        if !roots.is_empty() {
            prop_assert_eq!(roots.len(), g);
        }
        for y in roots {
            prop_assert_eq!(f.pow(y, t as i64).unwrap(), a);
        }
    }

    #[test]
    fn scaling_preserves_zero_count(
        q in prop::sample::select(SMALL.to_vec()),
        pick in any::<prop::sample::Index>(),
        raw in prop::collection::vec(0u32..64, 5),
        scale in 0i64..64,
    ) {
        let c = census_code(q, pick);
        let f = c.field();
        let u: Vec<FieldElement> = raw[..c.k()].iter().map(|&v| f.from_int(v % q)).collect();
        prop_assume!(u.iter().any(|a| !a.is_zero()));
        let unit = f.alpha_pow(scale);
        let scaled: Vec<FieldElement> = u.iter().map(|&a| f.mul(a, unit)).collect();
        prop_assert_eq!(c.count_zeros(&u).unwrap(), c.count_zeros(&scaled).unwrap());
        let word = c.encode(&u).unwrap();
        prop_assert_eq!(c.count_zeros(&u).unwrap(), word.iter().filter(|a| a.is_zero()).count());
    }

    #[test]
    fn distance_routes_agree(q in prop::sample::select(SMALL.to_vec()), pick in any::<prop::sample::Index>()) {
        let c = census_code(q, pick);
        let e = c.weight_enumerator_exhaustive();
        prop_assert_eq!(&c.weight_enumerator(), &e);
        let units = (q - 1) as u64;
        prop_assert!(e.iter().all(|(&w, &n)| w == 0 || n % units == 0));
        prop_assert_eq!(e.values().sum::<u64>(), (q as u64).pow(c.k() as u32));
        let (z, f) = c.max_zeros_with_witness();
        prop_assert_eq!(c.count_zeros(&f).unwrap(), z);
        prop_assert_eq!(min_nonzero_weight(&e), Some(c.n() - z));
    }

    #[test]
    fn partition_size_law(q in prop::sample::select(ORDERS[..8].to_vec()), (s, t) in tetra_params(12)) {
        let f = make_field(q).unwrap();
        let p = empty_tetrahedron(s, t).unwrap();
        // t past q-2 may alias exponents mod q-1
        let Ok(c) = build_code(&f, &p) else { return Ok(()) };
        let part = column_partition(&c).unwrap();
        prop_assert!(part.satisfies_size_law());
        let g = gcd(t, q as i64 - 1) as usize;
        prop_assert!(part.cells().values().all(|cell| cell.len() == g));
    }

    #[test]
    fn white_canonical_is_orbit_invariant((s, t) in tetra_params(20)) {
        let c = white_canonical(s, t).unwrap();
        prop_assert_eq!(white_canonical(c, t).unwrap(), c);
        for member in white_orbit(s, t).unwrap() {
            prop_assert_eq!(white_canonical(member, t).unwrap(), c);
            prop_assert!(white_equivalence_map(member, s, t).unwrap().is_some());
        }
    }

    #[test]
    fn unimodular_maps_preserve_volume_and_width(
        (s, t) in tetra_params(15),
        m in prop::sample::select(vec![
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
            [[1, 2, 0], [0, 1, 0], [0, 0, 1]],
            [[1, 0, 0], [3, 1, 0], [-2, 0, 1]],
            [[2, 1, 0], [1, 1, 0], [0, 0, -1]],
        ]),
        shift in prop::array::uniform3(-5i64..5),
    ) {
        let map = AffineUnimodularMap::new(m, shift).unwrap();
        let p = empty_tetrahedron(s, t).unwrap();
        let v = p.points();
        let img = map.apply(&p);
        let w = img.points();
        prop_assert_eq!(normalized_volume_tetra(v[0], v[1], v[2], v[3]), t as u64);
        prop_assert_eq!(normalized_volume_tetra(w[0], w[1], w[2], w[3]), t as u64);
        prop_assert_eq!(lattice_width(&img), lattice_width(&p));
    }

    #[test]
    fn sig32_formula_interval_is_ordered(q in prop::sample::select(ORDERS.to_vec()), (s, t) in tetra_params(30)) {
        prop_assume!(q >= 5 && s > 0);
        let d = dim5_distance(Width1Sig::Sig32, q, s, t).unwrap();
        let n = ((q - 1) as u64).pow(3);
        prop_assert!(1 <= d.lower && d.lower <= d.upper && d.upper <= n);
    }
}

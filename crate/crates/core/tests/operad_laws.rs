use ainf_core::basis::basis_exact;
use ainf_core::differential::differential;
use ainf_core::operad::compose;
use ainf_core::{Element, Presentation, Tree};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::select;

fn trees() -> Vec<Tree> {
    let mut out = vec![Tree::unit()];
    for n in 2..=4 {
        out.extend(basis_exact(Presentation::AInf, n, 0).unwrap());
    }
    out
}

fn odd(d: i64) -> bool {
    d.rem_euclid(2) == 1
}

/// An outer tree, one tree per input of it, and enough trees for the
/// inputs of those.
fn tower() -> impl Strategy<Value = (Tree, Vec<Tree>, Vec<Tree>)> {
    let all = trees();
    let small: Vec<Tree> = all.iter().filter(|t| t.arity() <= 3).cloned().collect();
    (select(small.clone()), proptest::collection::vec(select(small), 3), proptest::collection::vec(select(all), 9)).prop_map(
        |(outer, mid, leaves)| {
            let mid: Vec<Tree> = mid.into_iter().cycle().take(outer.arity()).collect();
            let n: usize = mid.iter().map(|t| t.arity()).sum();
            let leaves: Vec<Tree> = leaves.into_iter().cycle().take(n).collect();
            (outer, mid, leaves)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grafting_is_associative((outer, mid, leaves) in tower()) {
        let mid_refs: Vec<&Tree> = mid.iter().collect();
        let leaf_refs: Vec<&Tree> = leaves.iter().collect();
        let (inner, s1) = Tree::graft(&mid_refs, &outer).unwrap();
        let (lhs, s2) = Tree::graft(&leaf_refs, &inner).unwrap();

        let mut groups = Vec::new();
        let mut sign = 1;
        let mut start = 0;
        for t in &mid {
            let g = &leaf_refs[start..start + t.arity()];
            start += t.arity();
            let (v, s) = Tree::graft(g, t).unwrap();
            sign *= s;
            groups.push((v, g.iter().map(|u| u.degree()).sum::<i64>()));
        }
        let vs: Vec<&Tree> = groups.iter().map(|(v, _)| v).collect();
        let (rhs, s3) = Tree::graft(&vs, &outer).unwrap();
        sign *= s3;
        // Interleaving leaves with the middle trees passes each middle tree
        // over the leaves of later groups.
        for (i, t) in mid.iter().enumerate() {
            for (_, d) in &groups[i + 1..] {
                if odd(t.degree()) && odd(*d) {
                    sign = -sign;
                }
            }
        }
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(s1 * s2, sign);
    }

    #[test]
    fn differential_is_a_derivation_of_composition((outer, mid, _) in tower()) {
        let pres = Presentation::AInf;
        let x: Vec<Element> = mid.iter().map(|t| Element::basis(t.clone())).collect();
        let y = Element::basis(outer.clone());
        let refs: Vec<&Element> = x.iter().collect();
        let lhs = differential(pres, &compose(pres, &refs, &y).unwrap()).unwrap();

        let mut rhs = compose(pres, &refs, &differential(pres, &y).unwrap()).unwrap();
        let mut later = y.degree();
        for i in (0..x.len()).rev() {
            let dx = differential(pres, &x[i]).unwrap();
            let mut args: Vec<&Element> = refs.clone();
            args[i] = &dx;
            let term = compose(pres, &args, &y).unwrap();
            let c = BigInt::from(if odd(later) { -1 } else { 1 });
            rhs.add_assign_scaled(&term, &c);
            later += x[i].degree();
        }
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn grafting_a_unit_row_changes_nothing() {
    for t in trees() {
        let units = vec![Tree::unit(); t.arity()];
        let refs: Vec<&Tree> = units.iter().collect();
        assert_eq!(Tree::graft(&refs, &t).unwrap(), (t.clone(), 1));
    }
}

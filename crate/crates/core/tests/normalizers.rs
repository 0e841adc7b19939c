use ordmon::normal_forms::{check_derivation, normalize_with, one_step_rewrites};
use ordmon::presentations::build_presentation;
use ordmon::verification::all_words;
use ordmon::words::{alphabet, evaluate};
use ordmon::{ChainSize, Family, Word};

#[test]
fn one_step_rewrites_do_not_change_the_normal_form() {
    for fam in [Family::D, Family::ID, Family::IC] {
        for k in 1..=3 {
            let n = ChainSize::new(k).unwrap();
            let p = build_presentation(fam, n).unwrap();
            for letters in all_words(&alphabet(fam, n), 4) {
                let w = Word::new(fam, n, letters).unwrap();
                let (nf, d) = normalize_with(&p, &w).unwrap();
                assert!(check_derivation(&d, &p));
                for (step, v) in one_step_rewrites(&p, &w) {
                    assert_eq!(
                        evaluate(&v),
                        evaluate(&w),
                        "{} at {}",
                        step.relation_id,
                        step.position
                    );
                    assert_eq!(
                        normalize_with(&p, &v).unwrap().0,
                        nf,
                        "{w} via {}",
                        step.relation_id
                    );
                }
            }
        }
    }
}

#[test]
fn long_words_stay_well_under_the_step_cap() {
    let n = ChainSize::new(6).unwrap();
    for fam in [Family::D, Family::ID, Family::IC] {
        let p = build_presentation(fam, n).unwrap();
        let a = alphabet(fam, n);
        // Descending cyclic scan of the alphabet, 60 letters long.
        let letters = (0..60)
            .map(|i| a[a.len() - 1 - (i * 7) % a.len()])
            .collect();
        let w = Word::new(fam, n, letters).unwrap();
        let (nf, d) = normalize_with(&p, &w).unwrap();
        assert_eq!(evaluate(&nf), evaluate(&w));
        assert!(
            d.steps.len() <= 2 * 60 * 60,
            "{fam}: {} steps",
            d.steps.len()
        );
    }
}

#[test]
fn one_step_rewrites_cover_both_directions() {
    let n = ChainSize::new(3).unwrap();
    let p = build_presentation(Family::D, n).unwrap();
    let w = ordmon::words::parse_word("e[1,3] e[2,3]", Family::D, n).unwrap();
    let ids: Vec<String> = one_step_rewrites(&p, &w)
        .into_iter()
        .map(|(s, v)| format!("{} {:?} -> {v}", s.relation_id, s.direction))
        .collect();
    assert!(
        ids.contains(&"D.5[1,2,3] LR -> e[1,3]".to_string()),
        "{ids:?}"
    );
}

//! The fixture suite behind the `repro` command: replays every canonical
//! construction and counterexample and reports one named pass/fail per
//! claim. Everything is recomputed from scratch; nothing is cached.

use num_traits::Zero;

use crate::completion::{
    complete, seq_equivalent, BasePoint, CauchySeqModel, PresentedSpace, Schedule,
    zero_completion,
};
use crate::extension::{asymmetric_completion_finite, attach_asymmetric_point};
use crate::isometry::{find_isometry, IsometryMode};
use crate::kahn::{
    asymmetry_certificate, density_witness, kahn_incompleteness_witness, truncate, Alphabet,
    DensityOutcome, KahnPoint, StreamSpec, WordSubset,
};
use crate::rational::{pow2_neg, rat, rat_int};
use crate::search::{random_pmetric, GeneratorParams};
use crate::seq::is_p_cauchy_complete_finite;
use crate::space::{
    is_dense, is_symmetrically_dense, one_point_x, open_ball, two_point_y, FinitePMetricSpace,
    PointSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReproCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct ReproOutcome {
    pub checks: Vec<ReproCheck>,
}

impl ReproOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn check(&mut self, name: &str, f: impl FnOnce() -> Result<String, String>) {
        let (pass, detail) = match f() {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.checks.push(ReproCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

fn require(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn corpus() -> Vec<FinitePMetricSpace> {
    let mut out = vec![one_point_x(), two_point_y()];
    for seed in 0..25u64 {
        let n = 1 + (seed as usize % 4);
        out.push(random_pmetric(&GeneratorParams::new(n, seed)).expect("generator"));
    }
    out
}

/// Runs the whole suite. Deterministic: fixed fixtures and fixed seeds.
pub fn run_repro() -> ReproOutcome {
    let mut out = ReproOutcome::default();
    let x1 = one_point_x();
    let y2 = two_point_y();

    out.check("x1-y2-axioms", || {
        require(x1.check_axioms().passed(), "X1 fails axioms")?;
        require(y2.check_axioms().passed(), "Y2 fails axioms")?;
        Ok("both pass P1-P4".into())
    });

    out.check("x1-y2-p-cauchy-complete", || {
        let cx = is_p_cauchy_complete_finite(&x1);
        let cy = is_p_cauchy_complete_finite(&y2);
        require(cx.complete && cy.complete, "expected both complete")?;
        Ok(format!(
            "cycles checked: {} and {}",
            cx.cycles_checked, cy.cycles_checked
        ))
    });

    out.check("x1-embeds-isometrically-in-y2", || {
        let w = find_isometry(&x1, &y2, IsometryMode::Embedding)
            .ok_or("no embedding found")?;
        require(w.mapping == vec![0], "expected the map a -> a")?;
        require(w.verify(&x1, &y2), "witness fails re-verification")?;
        Ok("a -> a".into())
    });

    out.check("x1-image-dense-in-y2", || {
        let subset = PointSet::new(vec![0], 2).map_err(|e| e.to_string())?;
        require(is_dense(&y2, &subset).dense, "image not dense")?;
        Ok("p(b,a) = p(b,b) = 1".into())
    });

    out.check("no-bijective-isometry-x1-y2", || {
        require(
            find_isometry(&x1, &y2, IsometryMode::Bijection).is_none(),
            "unexpected bijection",
        )?;
        Ok("cardinality obstruction".into())
    });

    out.check("y2-subset-a-not-symmetrically-dense", || {
        let subset = PointSet::new(vec![0], 2).map_err(|e| e.to_string())?;
        let r = is_symmetrically_dense(&y2, &subset);
        require(!r.dense, "unexpectedly symmetrically dense")?;
        require(r.failing == Some(1), "counterwitness should be b")?;
        let ball = open_ball(&y2, 0, &rat(1, 2)).map_err(|e| e.to_string())?;
        require(!ball.contains(1), "b inside B_{1/2}(a)")?;
        Ok("counterwitness b; b outside B_{1/2}(a)".into())
    });

    out.check("one-point-attachment-corpus", || {
        let mut attachments = 0;
        for space in corpus() {
            for base in 0..space.len() {
                let ext = attach_asymmetric_point(&space, base).map_err(|e| e.to_string())?;
                require(ext.space.check_axioms().passed(), "extension fails axioms")?;
                require(
                    ext.restriction().matrix() == space.matrix(),
                    "restriction mismatch",
                )?;
                let old = PointSet::new((0..space.len()).collect(), ext.space.len())
                    .map_err(|e| e.to_string())?;
                require(is_dense(&ext.space, &old).dense, "old points not dense")?;
                require(
                    !is_symmetrically_dense(&ext.space, &old).dense,
                    "old points symmetrically dense",
                )?;
                attachments += 1;
            }
        }
        Ok(format!("{attachments} attachments verified"))
    });

    out.check("attachment-outputs-complete", || {
        let mut verified = 0;
        for space in corpus() {
            let (_, cert) =
                asymmetric_completion_finite(&space, 0).map_err(|e| e.to_string())?;
            require(cert.complete, "attached space not p-Cauchy complete")?;
            verified += 1;
        }
        Ok(format!("{verified} completions certified"))
    });

    let alpha = Alphabet::from_str_symbols("01").expect("alphabet");

    out.check("kahn-truncation-axioms", || {
        for depth in 0..=4 {
            let t = truncate(&alpha, depth).map_err(|e| e.to_string())?;
            require(
                t.check_axioms().passed(),
                &format!("truncation depth {depth} fails axioms"),
            )?;
        }
        Ok("depths 0..=4 over a binary alphabet".into())
    });

    out.check("kahn-density-witnesses", || {
        let streams = [
            StreamSpec::repeat("0").unwrap(),
            StreamSpec::repeat("1").unwrap(),
            StreamSpec::eventually_periodic("0", "01").unwrap(),
            StreamSpec::ThueMorse {
                zero: '0',
                one: '1',
            },
        ];
        let mut found = 0;
        for s in &streams {
            let x = KahnPoint::Stream(s.clone());
            for k in 1..=10 {
                match density_witness(&alpha, WordSubset::AllWords, &x, &pow2_neg(k))
                    .map_err(|e| e.to_string())?
                {
                    DensityOutcome::Witness { .. } => found += 1,
                    DensityOutcome::Asymmetry(_) => {
                        return Err(format!("no witness for {s:?} at 2^-{k}"))
                    }
                }
            }
        }
        Ok(format!("{found} witnesses"))
    });

    out.check("kahn-empty-word-asymmetry", || {
        let cert =
            asymmetry_certificate(&alpha, &rat(1, 2), 10).map_err(|e| e.to_string())?;
        require(cert.holds_globally, "certificate not global at eps 1/2")?;
        let probe = density_witness(
            &alpha,
            WordSubset::WordsMinusEmpty,
            &KahnPoint::empty_word(),
            &rat(1, 2),
        )
        .map_err(|e| e.to_string())?;
        require(
            matches!(probe, DensityOutcome::Asymmetry(_)),
            "expected an asymmetry outcome",
        )?;
        Ok(format!("{} words checked", cert.words_checked))
    });

    out.check("kahn-no-word-limit", || {
        let w = kahn_incompleteness_witness(&alpha);
        require(w.self_distance_limit.is_zero(), "sequence not 0-Cauchy")?;
        require(w.no_word_limit(&alpha, 8), "a word limit appeared")?;
        Ok("prefixes of 000... have no word limit".into())
    });

    out.check("closeness-is-an-equivalence", || {
        let presented = PresentedSpace::Finite(y2.clone());
        let models = [
            CauchySeqModel::constant(&y2, 0).map_err(|e| e.to_string())?,
            CauchySeqModel::constant(&y2, 1).map_err(|e| e.to_string())?,
            CauchySeqModel::finite(
                &y2,
                crate::seq::EventuallyPeriodicSeq::new(vec![1], vec![0], 2)
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?,
        ];
        let eq = |a: &CauchySeqModel, b: &CauchySeqModel| {
            seq_equivalent(&presented, a, b).map_err(|e| e.to_string())
        };
        for a in &models {
            require(eq(a, a)?, "not reflexive")?;
            for b in &models {
                require(eq(a, b)? == eq(b, a)?, "not symmetric")?;
                for c in &models {
                    if eq(a, b)? && eq(b, c)? {
                        require(eq(a, c)?, "not transitive")?;
                    }
                }
            }
        }
        Ok("checked on 3 models over Y2".into())
    });

    out.check("quotient-distance-representative-independent", || {
        let completion = complete(&PresentedSpace::KahnFiniteWords(alpha.clone()))
            .map_err(|e| e.to_string())?;
        let zeros = KahnPoint::Stream(StreamSpec::repeat("0").unwrap());
        let reps = [
            CauchySeqModel::kahn_canonical(zeros.clone()),
            CauchySeqModel::kahn(zeros.clone(), Schedule::new(2, 2).unwrap()),
            CauchySeqModel::kahn(zeros.clone(), Schedule::new(5, 3).unwrap()),
        ];
        let word = completion
            .base_class(&BasePoint::Word("01".into()))
            .map_err(|e| e.to_string())?;
        let mut seen = Vec::new();
        for rep in &reps {
            let id = completion.class_of(rep).map_err(|e| e.to_string())?;
            seen.push(completion.distance(id, word).map_err(|e| e.to_string())?);
        }
        require(seen.windows(2).all(|w| w[0] == w[1]), "distances differ")?;
        Ok("3 representatives agree".into())
    });

    out.check("completion-fragments-pass-axioms", || {
        let completion = complete(&PresentedSpace::KahnFiniteWords(alpha.clone()))
            .map_err(|e| e.to_string())?;
        let mut ids = vec![completion
            .class_of(&CauchySeqModel::kahn_canonical(KahnPoint::Stream(
                StreamSpec::repeat("0").unwrap(),
            )))
            .map_err(|e| e.to_string())?];
        for w in ["", "0", "1", "01", "00"] {
            ids.push(
                completion
                    .base_class(&BasePoint::Word(w.into()))
                    .map_err(|e| e.to_string())?,
            );
        }
        let frag = completion.materialize_fragment(&ids).map_err(|e| e.to_string())?;
        require(frag.check_axioms().passed(), "fragment fails axioms")?;
        Ok(format!("fragment of {} classes", ids.len()))
    });

    out.check("finite-completions-collapse", || {
        let mut verified = 0;
        for space in corpus() {
            let completion =
                complete(&PresentedSpace::Finite(space.clone())).map_err(|e| e.to_string())?;
            let (materialized, witness) = completion.to_finite().map_err(|e| e.to_string())?;
            require(witness.verify(&materialized, &space), "collapse not isometric")?;
            verified += 1;
        }
        Ok(format!("{verified} spaces collapse isometrically"))
    });

    out.check("base-symmetrically-dense-in-completion", || {
        let completion = complete(&PresentedSpace::KahnFiniteWords(alpha.clone()))
            .map_err(|e| e.to_string())?;
        let id = completion
            .class_of(&CauchySeqModel::kahn_canonical(KahnPoint::Stream(
                StreamSpec::repeat("0").unwrap(),
            )))
            .map_err(|e| e.to_string())?;
        for k in 1..=10 {
            let w = completion
                .symmetric_density_witness(id, &pow2_neg(k))
                .map_err(|e| e.to_string())?;
            require(w.ok(), &format!("witness fails at 2^-{k}"))?;
        }
        Ok("radii 2^-1 .. 2^-10".into())
    });

    out.check("zero-completion-membership", || {
        let zc = zero_completion(&PresentedSpace::KahnFiniteWords(alpha.clone()))
            .map_err(|e| e.to_string())?;
        let stream_class = zc
            .completion()
            .class_of(&CauchySeqModel::kahn_canonical(KahnPoint::Stream(
                StreamSpec::repeat("1").unwrap(),
            )))
            .map_err(|e| e.to_string())?;
        require(zc.is_member(stream_class), "stream class rejected")?;
        let word_class = zc
            .completion()
            .base_class(&BasePoint::Word("10".into()))
            .map_err(|e| e.to_string())?;
        require(zc.is_member(word_class), "word class rejected")?;
        let fin = zero_completion(&PresentedSpace::Finite(y2.clone()))
            .map_err(|e| e.to_string())?;
        require(fin.collapses_to_base(), "finite 0-completion does not collapse")?;
        Ok("stream and word classes accepted; finite case collapses".into())
    });

    out.check("seq-distance-sanity", || {
        let dist = crate::rational::rat_int(1);
        require(y2.p(0, 1) == &dist && y2.p(1, 1) == &dist, "Y2 values drifted")?;
        require(x1.p(0, 0) == &rat_int(0), "X1 value drifted")?;
        Ok("fixture matrices intact".into())
    });

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_suite_passes() {
        let outcome = run_repro();
        for c in &outcome.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
        assert!(outcome.checks.len() >= 15);
    }
}

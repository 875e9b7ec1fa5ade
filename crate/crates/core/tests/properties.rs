use examforge_core::hs::{analyze, parse_subset, FunctionReport};
use examforge_core::htrsl::{compile_spec, parse_htrsl, pretty_print, Desc, DescItem, HtrslFile};
use examforge_core::proof::{
    grade, weighted_edit_distance, Algorithm, PuzzleAttempt, PuzzleItem, PuzzleTask, SolutionSpec,
};
use examforge_core::Points;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

// ---- HTRSL ----

fn literal() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::sample::select(vec![
            "=>", "->", "::", "[", "]", ",", "Int", "String", "Num", "Maybe", "(", ")", "*", "$"
        ])
        .prop_map(String::from),
        "[ -~]{1,6}",
        "[äλ→\"\\\\]{1,3}",
    ]
}

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["a", "b", "xs", "t'", "_k", "aB9"]).prop_map(String::from)
}

fn leaf() -> impl Strategy<Value = DescItem> {
    prop_oneof![
        3 => literal().prop_map(DescItem::Lit),
        2 => name().prop_map(DescItem::Name),
        1 => Just(DescItem::Space),
    ]
}

fn no_parens_item() -> impl Strategy<Value = DescItem> {
    prop_oneof![
        4 => leaf(),
        1 => prop::collection::vec(prop::collection::vec(leaf(), 1..3), 1..4).prop_map(DescItem::Alt),
    ]
}

fn item() -> impl Strategy<Value = DescItem> {
    prop_oneof![
        5 => no_parens_item(),
        1 => prop::collection::vec(no_parens_item(), 1..4).prop_map(DescItem::OptParens),
    ]
}

fn desc() -> impl Strategy<Value = Desc> {
    prop::collection::vec(item(), 1..6).prop_map(|items| Desc { items })
}

/// Literal tokens joined by single spaces, names spelled as themselves, the
/// first alternative of every choice, optional parentheses present.
fn canonical(items: &[DescItem], out: &mut Vec<String>) {
    for item in items {
        match item {
            DescItem::Lit(t) => out.push(t.clone()),
            DescItem::Name(n) => out.push(n.clone()),
            DescItem::Space => out.push(" ".into()),
            DescItem::Alt(alts) => canonical(&alts[0], out),
            DescItem::OptParens(body) => {
                out.push("(".into());
                canonical(body, out);
                out.push(")".into());
            }
        }
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn htrsl_pretty_print_round_trips(specs in prop::collection::vec(desc(), 0..4)) {
        let file = HtrslFile { specs };
        let printed = pretty_print(&file);
        prop_assert_eq!(parse_htrsl(&printed).unwrap(), file);
    }

    #[test]
    fn htrsl_canonical_rendering_matches(d in desc()) {
        // descriptions that bind a name inside a choice or put parentheses
        // inside optional parentheses are rejected by the compiler
        let Ok(compiled) = compile_spec(&d) else { return Ok(()) };
        let mut tokens = Vec::new();
        canonical(&d.items, &mut tokens);
        let text = tokens.join(" ");
        let pattern = compiled.to_pattern().unwrap();
        prop_assert!(pattern.is_match(&text), "{} !~ {:?}", compiled.pattern, text);
    }
}

// ---- proof puzzles ----

fn weight() -> impl Strategy<Value = Points> {
    prop::sample::select(vec![
        Points::ZERO,
        Points::from_ratio(1, 2),
        Points::from(1),
        Points::from(2),
    ])
}

#[derive(Debug, Clone)]
struct Case {
    task: PuzzleTask,
    attempt: Vec<String>,
}

fn text(i: usize) -> String {
    format!("line {i}")
}

fn solution(n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<bool>, bool)> {
    prop::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=n)
        .prop_shuffle()
        .prop_flat_map(|items| {
            let len = items.len();
            (Just(items), prop::collection::vec(any::<bool>(), len), any::<bool>())
        })
}

fn case() -> impl Strategy<Value = Case> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(weight(), n),
                prop::collection::vec(solution(n), 1..=2),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), 0..=n).prop_shuffle(),
            )
        })
        .prop_map(|(weights, sols, attempt)| {
            let pool = weights
                .iter()
                .enumerate()
                .map(|(i, w)| PuzzleItem::new(text(i), *w))
                .collect();
            let solutions = sols
                .into_iter()
                .map(|(items, entries, extra)| {
                    let sum: Points = items.iter().map(|&i| weights[i]).sum();
                    SolutionSpec {
                        points: sum + if extra { Points::from(1) } else { Points::ZERO },
                        entries: entries
                            .iter()
                            .enumerate()
                            .filter(|(_, e)| **e)
                            .map(|(i, _)| i)
                            .collect(),
                        items: items.into_iter().map(text).collect(),
                    }
                })
                .collect();
            Case {
                task: PuzzleTask::new(pool, solutions).unwrap(),
                attempt: attempt.into_iter().map(text).collect(),
            }
        })
}

fn texts(task: &PuzzleTask, items: &[usize]) -> Vec<String> {
    items.iter().map(|&i| task.item(i).text.clone()).collect()
}

fn weights_of(task: &PuzzleTask, items: &[usize]) -> Points {
    items.iter().map(|&i| task.weight(i)).sum()
}

fn seq(len: usize) -> impl Strategy<Value = Vec<(u8, Points)>> {
    prop::collection::vec((0u8..5, weight()), 0..=len)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn exact_solution_scores(c in case()) {
        for (i, sol) in c.task.solutions().iter().enumerate() {
            let attempt = PuzzleAttempt::new(texts(&c.task, sol.items()));
            let legacy = grade(&c.task, &attempt, Algorithm::Legacy).unwrap();
            prop_assert_eq!(legacy.per_solution[i].1, sol.points());
            let sequence = grade(&c.task, &attempt, Algorithm::Sequence).unwrap();
            prop_assert_eq!(sequence.per_solution[i].1, sol.points().min(weights_of(&c.task, sol.items())));
        }
    }

    #[test]
    fn sequence_score_is_bounded(c in case()) {
        let bound = c
            .task
            .solutions()
            .iter()
            .map(|s| s.points().min(weights_of(&c.task, s.items())))
            .fold(Points::ZERO, Points::max);
        let r = grade(&c.task, &PuzzleAttempt::new(c.attempt.clone()), Algorithm::Sequence).unwrap();
        prop_assert!(!r.points.is_negative());
        prop_assert!(r.points <= bound);
        let best = r.per_solution.iter().map(|(_, p)| *p).fold(Points::ZERO, Points::max);
        prop_assert_eq!(r.points, best);
    }

    #[test]
    fn trailing_zero_weight_distractors(c in case(), extra in 1usize..4) {
        // rebuild the task with extra zero-weight items that belong to no solution
        let mut pool = c.task.pool().to_vec();
        let distractors: Vec<String> = (0..extra).map(|i| format!("distractor {i}")).collect();
        pool.extend(distractors.iter().map(|t| PuzzleItem::new(t.clone(), Points::ZERO)));
        let solutions = c
            .task
            .solutions()
            .iter()
            .map(|s| SolutionSpec {
                items: texts(&c.task, s.items()),
                points: s.points(),
                entries: s.entry_positions().collect(),
            })
            .collect();
        let task = PuzzleTask::new(pool, solutions).unwrap();
        let before = PuzzleAttempt::new(c.attempt.clone());
        let mut longer = c.attempt.clone();
        longer.extend(distractors);
        let after = PuzzleAttempt::new(longer);
        for algorithm in [Algorithm::Legacy, Algorithm::Sequence] {
            let a = grade(&task, &before, algorithm).unwrap().points;
            let b = grade(&task, &after, algorithm).unwrap().points;
            prop_assert_eq!(a, b, "{}", algorithm);
        }
    }

    #[test]
    fn distance_is_a_metric(x in seq(6), y in seq(6), z in seq(6)) {
        // equal symbols must carry equal weights
        let norm = |s: &[(u8, Points)]| -> Vec<(u8, Points)> {
            s.iter().map(|&(c, _)| (c, Points::from_ratio(c as i64, 2))).collect()
        };
        let (x, y, z) = (norm(&x), norm(&y), norm(&z));
        let d = |a: &[(u8, Points)], b: &[(u8, Points)]| weighted_edit_distance(a, b, |t: &(u8, Points)| t.1);
        prop_assert_eq!(d(&x, &x), Points::ZERO);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }
}

// ---- code analysis ----

const GLOBALS: [&str; 5] = ["map", "filter", "foldr", "helper", "length"];
const OPS: [&str; 5] = ["+", "*", "++", "==", "<"];

/// A small expression over the parameters `p0`..`p2` and a few library
/// names, rendered as source.
fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p0", "p1", "p2"]).prop_map(String::from),
        prop::sample::select(GLOBALS.to_vec()).prop_map(String::from),
        (0u8..10).prop_map(|n| n.to_string()),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(OPS.to_vec()), inner.clone())
                .prop_map(|(a, op, b)| format!("({a} {op} {b})")),
            (
                prop::sample::select(GLOBALS.to_vec()),
                prop::collection::vec(inner.clone(), 1..3)
            )
                .prop_map(|(f, args)| format!("({f} {})", args.join(" "))),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|items| format!("[{}]", items.join(", "))),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, a, b)| format!("(if {c} then {a} else {b})")),
        ]
    })
}

fn report(src: &str) -> FunctionReport {
    let r = analyze(&parse_subset(src).unwrap_or_else(|e| panic!("{src}\n{e}")));
    r.functions.into_iter().find(|f| f.name == "f").unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn called_never_overlaps_locals(body in expr(), local in expr()) {
        let src = format!("f p0 (p1:p2) = {body} + g p0\n  where g p1 = {local}\n        helper = p0\n");
        let r = report(&src);
        for c in &r.called_fns {
            prop_assert!(!r.args.contains(c) && !r.declared_fns.contains(c), "{c} in {r:?}");
        }
    }

    #[test]
    fn redundant_parentheses_change_nothing(body in expr()) {
        let plain = report(&format!("f p0 p1 p2 = {body}"));
        let wrapped = report(&format!("f p0 p1 p2 = (({body}))"));
        prop_assert_eq!(plain, wrapped);
    }

    #[test]
    fn unused_where_binding(body in expr(), arity in 0usize..3) {
        let plain = report(&format!("f p0 p1 p2 = {body}"));
        let params: Vec<String> = (0..arity).map(|i| format!("q{i}")).collect();
        let src = format!("f p0 p1 p2 = {body}\n  where unused {} = 1\n", params.join(" "));
        let extended = report(&src);
        prop_assert_eq!(&extended.called_fns, &plain.called_fns);
        let expected: Vec<String> = if arity > 0 { vec!["unused".into()] } else { vec![] };
        prop_assert_eq!(extended.declared_fns, expected);
    }

    #[test]
    fn if_to_case(c in expr(), a in expr(), b in expr()) {
        let with_if = report(&format!("f p0 p1 p2 = if {c} then {a} else {b}"));
        let with_case = report(&format!("f p0 p1 p2 = case {c} of {{ True -> {a}; False -> {b} }}"));
        let nested_if = [&c, &a, &b].iter().any(|e| e.contains("(if "));
        prop_assert!(with_if.has_if && !with_if.has_case);
        prop_assert!(with_case.has_case);
        prop_assert_eq!(with_case.has_if, nested_if);
        prop_assert_eq!(with_if.called_fns, with_case.called_fns);
        prop_assert_eq!(with_if.args, with_case.args);
    }
}

use num_bigint::BigInt;

use super::*;

fn eval(src: &str) -> Result<Machine, LangError> {
    run(&tokenize(src), Machine::new())
}

fn shown(src: &str) -> String {
    eval(src).unwrap().stack().to_string()
}

fn binadd() -> Machine {
    Machine::new()
        .with_cap(Some(2))
        .with_modulus(Some(BigInt::from(2)))
}

#[test]
fn sum_of_one_and_zero() {
    assert_eq!(shown("1 0 +"), "1");
}

#[test]
fn overflow_under_cap_two() {
    let err = run(&tokenize("0 1 0"), Machine::new().with_cap(Some(2))).unwrap_err();
    assert_eq!(err.name(), "StackOverflow");
    assert_eq!(err.position(), 2);
}

#[test]
fn underflow_on_empty_stack() {
    let err = eval("+").unwrap_err();
    assert!(matches!(
        err,
        LangError::StackUnderflow {
            position: 0,
            needed: 2,
            depth: 0,
            ..
        }
    ));
}

#[test]
fn map_squares() {
    let m = eval("[1 2 3 4] [dup *] map").unwrap();
    assert_eq!(m.stack().len(), 1);
    assert_eq!(
        m.stack().top(),
        Some(&Value::Quotation(tokenize("1 4 9 16")))
    );
    assert_eq!(m.stack().to_string(), "[1 4 9 16]");
}

#[test]
fn map_over_nested_and_empty_lists() {
    assert_eq!(shown("[] [dup *] map"), "[]");
    assert_eq!(shown("[[1] [2 3]] [apply] map"), "[1 3]");
    assert_eq!(eval("[dup] [dup] map").unwrap_err().name(), "TypeMismatch");
    assert_eq!(eval("[1] [pop] map").unwrap_err().name(), "StackUnderflow");
}

#[test]
fn apply_runs_quotation() {
    assert_eq!(shown("2 [dup +] apply"), "4");
    assert_eq!(eval("1 apply").unwrap_err().name(), "TypeMismatch");
}

#[test]
fn builtins() {
    assert_eq!(shown("1 2 swap"), "2 1");
    assert_eq!(shown("1 2 pop"), "1");
    assert_eq!(shown("5 id"), "5");
    assert_eq!(shown("3 4 *"), "12");
    assert_eq!(shown("-7 2 +"), "-5");
    assert_eq!(shown("99999999999999999999 1 +"), "100000000000000000000");
}

#[test]
fn modulus_reduces_literals_and_results() {
    let m = run(
        &tokenize("1 1 + 3 -1"),
        Machine::new().with_modulus(Some(BigInt::from(2))),
    )
    .unwrap();
    assert_eq!(m.stack().to_string(), "0 1 1");
}

#[test]
fn bracket_errors() {
    assert_eq!(
        eval("[1 2").unwrap_err(),
        LangError::UnbalancedBracket { position: 0 }
    );
    assert_eq!(
        eval("1 ]").unwrap_err(),
        LangError::UnbalancedBracket { position: 1 }
    );
    assert_eq!(eval("[[1]").unwrap_err().name(), "UnbalancedBracket");
}

#[test]
fn unknown_word() {
    assert_eq!(
        eval("1 frob").unwrap_err(),
        LangError::UnknownWord {
            position: 1,
            word: "frob".into()
        }
    );
}

#[test]
fn quotation_contents_are_not_resolved_until_applied() {
    assert_eq!(shown("[frob]"), "[frob]");
    assert_eq!(eval("[frob] apply").unwrap_err().name(), "UnknownWord");
}

#[test]
fn trace_records_each_instruction() {
    let steps = trace(&tokenize("1 0 +"), Machine::new()).unwrap();
    let shown: Vec<String> = steps.iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["1", "1 0", "1"]);
    assert!(trace(&[], Machine::new()).unwrap().is_empty());
}

#[test]
fn trace_quotation_is_one_step() {
    let steps = trace(&tokenize("[1 2] 3"), Machine::new()).unwrap();
    assert_eq!(steps.len(), 2);
}

#[test]
fn trace_reports_prefix_on_error() {
    let err = trace(&tokenize("0 1 0"), binadd()).unwrap_err();
    let shown: Vec<String> = err.steps.iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["0", "0 1"]);
    assert_eq!(err.error.name(), "StackOverflow");
}

#[test]
fn square_expands_inline() {
    let m = define_word(Machine::new(), &tokenize(": square dup * ;")).unwrap();
    let defined = run(&tokenize("3 square"), m).unwrap();
    let expanded = eval("3 dup *").unwrap();
    assert_eq!(defined.stack(), expanded.stack());
    assert_eq!(defined.stack().to_string(), "9");
    assert_eq!(
        defined.lookup("square").unwrap().effect,
        Some(StackEffect {
            consumed: 1,
            produced: 1
        })
    );
}

#[test]
fn washer_is_a_sequence_of_words() {
    let mut m = Machine::new();
    for def in [
        ": WASH id ;",
        ": SPIN id ;",
        ": RINSE id ;",
        ": WASHER WASH SPIN RINSE SPIN ;",
    ] {
        m.define(&tokenize(def)).unwrap();
    }
    m.run(&tokenize("WASHER")).unwrap();
    assert!(m.stack().is_empty());
    match &m.lookup("WASHER").unwrap().body {
        WordBody::Tokens(body) => assert_eq!(render_tokens(body), "WASH SPIN RINSE SPIN"),
        other => panic!("unexpected body {other:?}"),
    }
}

#[test]
fn forward_reference_rejected() {
    let err = define_word(Machine::new(), &tokenize(": x y ;")).unwrap_err();
    assert_eq!(
        err,
        LangError::UnknownWord {
            position: 2,
            word: "y".into()
        }
    );
}

#[test]
fn definition_errors() {
    let m = Machine::new();
    for bad in [
        "square dup * ;",
        ": square dup *",
        ": ;",
        ": [ dup ;",
        ": 7 dup ;",
        ": a : b ; ;",
    ] {
        let err = define_word(m.clone(), &tokenize(bad)).unwrap_err();
        assert_eq!(err.name(), "MalformedDefinition", "{bad}");
    }
    assert_eq!(
        define_word(m.clone(), &tokenize(": dup id ;"))
            .unwrap_err()
            .name(),
        "DuplicateName"
    );
    let m = define_word(m, &tokenize(": two 2 ;")).unwrap();
    assert_eq!(
        define_word(m, &tokenize(": two 3 ;")).unwrap_err().name(),
        "DuplicateName"
    );
}

#[test]
fn inline_definitions_in_programs() {
    assert_eq!(shown(": sq dup * ; 4 sq"), "16");
    assert_eq!(
        eval("[: a 1 ;] apply").unwrap_err().name(),
        "MalformedDefinition"
    );
    assert_eq!(eval("1 ;").unwrap_err().name(), "MalformedDefinition");
}

#[test]
fn errors_inside_user_words_report_call_site() {
    let m = define_word(Machine::new(), &tokenize(": add +  ;")).unwrap();
    let err = run(&tokenize("1 add"), m).unwrap_err();
    assert_eq!(err.name(), "StackUnderflow");
    assert_eq!(err.position(), 1);
}

#[test]
fn effect_composition() {
    let dup = Builtin::Dup.effect().unwrap();
    let add = Builtin::Add.effect().unwrap();
    let pop = Builtin::Pop.effect().unwrap();
    assert_eq!(
        dup.then(add),
        StackEffect {
            consumed: 1,
            produced: 1
        }
    );
    assert_eq!(
        pop.then(pop),
        StackEffect {
            consumed: 2,
            produced: 0
        }
    );
    assert_eq!(
        StackEffect::PUSH.then(add),
        StackEffect {
            consumed: 1,
            produced: 1
        }
    );
    assert_eq!(dup.to_string(), "( 1 -- 2 )");
}

#[test]
fn literal_parsing() {
    assert_eq!(parse_literal("42"), Some(BigInt::from(42)));
    assert_eq!(parse_literal("-3"), Some(BigInt::from(-3)));
    assert_eq!(parse_literal("-"), None);
    assert_eq!(parse_literal("+1"), None);
    assert_eq!(parse_literal("1a"), None);
}

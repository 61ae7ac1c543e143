use std::path::Path;

use proptest::prelude::*;

use super::{lexer, parse_test_suite, parse_view_model};
use crate::model::{Action, Check, Span};
use crate::printer::{print_suite, print_view_model};
use crate::strategies::{test_suite, view_model};

/// `span` lies inside `text` and its line and column agree with its offset.
fn span_is_consistent(text: &str, span: Span) -> Result<(), TestCaseError> {
    prop_assert!(span.offset + span.length <= text.len(), "{span:?} past the end");
    prop_assert!(text.is_char_boundary(span.offset));
    let before = &text[..span.offset];
    prop_assert_eq!(span.line, 1 + before.matches('\n').count());
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    prop_assert_eq!(span.column, 1 + before[line_start..].chars().count());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn view_models_round_trip(desc in view_model()) {
        let printed = print_view_model(&desc);
        let parsed = parse_view_model(&printed, &desc.source);
        prop_assert!(parsed.is_ok(), "{printed}\n{parsed:?}");
        let parsed = parsed.unwrap();
        prop_assert_eq!(&parsed, &desc);
        prop_assert_eq!(print_view_model(&parsed), printed.clone());

        span_is_consistent(&printed, parsed.span)?;
        for w in &parsed.widgets {
            span_is_consistent(&printed, w.span)?;
            prop_assert!(printed[w.span.offset..].starts_with(w.kind.keyword()));
        }
        for c in &parsed.commands {
            span_is_consistent(&printed, c.span)?;
        }
    }

    #[test]
    fn suites_round_trip(suite in test_suite()) {
        let printed = print_suite(&suite);
        let parsed = parse_test_suite(&printed, &suite.source);
        prop_assert!(parsed.is_ok(), "{printed}\n{parsed:?}");
        let parsed = parsed.unwrap();
        prop_assert_eq!(&parsed, &suite);
        prop_assert_eq!(print_suite(&parsed), printed.clone());

        for s in &parsed.scenarios {
            span_is_consistent(&printed, s.span)?;
            prop_assert!(printed[s.span.offset..].starts_with("scenario"));
            for c in &s.given {
                span_is_consistent(&printed, c.span)?;
            }
            for a in &s.when {
                span_is_consistent(&printed, a.span())?;
                if let Action::Custom { name, .. } = a {
                    prop_assert!(printed[a.span().offset..].starts_with(name.as_str()));
                }
            }
            for c in &s.then {
                let span = match c { Check::Widget(w) => w.span, Check::Table(t) => t.span };
                span_is_consistent(&printed, span)?;
            }
        }
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        let lexed = lexer::tokenize(&text, Path::new("fuzz"));
        for t in &lexed.tokens {
            prop_assert!(t.span.offset + t.span.length <= text.len());
        }
        let _ = parse_view_model(&text, Path::new("fuzz.vmdsl"));
        let _ = parse_test_suite(&text, Path::new("fuzz.vmtest"));
    }

    #[test]
    fn damaged_sources_report_instead_of_panicking(
        suite in test_suite(),
        cut in any::<prop::sample::Index>(),
        insert in "[{}|\\[\\]\"\\\\ a-z\\n]{0,4}",
    ) {
        let printed = print_suite(&suite);
        let mut at = cut.index(printed.len() + 1);
        while !printed.is_char_boundary(at) {
            at -= 1;
        }
        let damaged = format!("{}{insert}{}", &printed[..at], &printed[at..]);
        if let Err(diags) = parse_test_suite(&damaged, Path::new("d.vmtest")) {
            prop_assert!(!diags.is_empty());
            for d in &diags {
                prop_assert!(d.span.offset <= damaged.len());
                prop_assert!(d.span.line >= 1 && d.span.column >= 1);
            }
        }
    }
}

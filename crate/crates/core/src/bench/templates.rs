//! Slot-filled template pools. Attribute values must not occur in any
//! template outside the target-fact claims; a unit test enforces this.

pub(crate) const OWNERS: &[&str] = &[
    "Maya", "Theo", "Lena", "Omar", "Priya", "Jonas", "Sofia", "Ravi", "Ines", "Kenji",
];

pub(crate) const OBJECTS: &[&str] = &[
    "bicycle", "kettle", "backpack", "umbrella", "notebook", "scooter", "jacket", "lamp", "guitar",
    "suitcase",
];

pub(crate) const ATTRIBUTES: &[(&str, &[&str])] = &[
    (
        "color",
        &[
            "red", "blue", "green", "yellow", "black", "white", "purple", "grey",
        ],
    ),
    (
        "pattern",
        &[
            "striped",
            "dotted",
            "checkered",
            "floral",
            "zigzag",
            "speckled",
        ],
    ),
    (
        "condition",
        &[
            "pristine",
            "worn",
            "scratched",
            "dented",
            "polished",
            "faded",
        ],
    ),
    (
        "size",
        &["small", "medium", "large", "tiny", "huge", "oversized"],
    ),
];

pub(crate) const EVENTS: &[&str] = &[
    "the farmers market opens before eight on Saturday",
    "the train to Lyon leaves on time tomorrow",
    "the library extends its opening hours this month",
    "the concert at the park sells out",
    "it rains during the Sunday picnic",
    "the bakery on Elm Street starts selling bagels",
    "the football club wins the derby",
    "the ferry is cancelled because of wind",
    "the museum offers free entry on Friday",
    "the power goes out during the storm",
    "the marathon route passes the river",
    "the cinema shows the director's cut",
    "the school fair raises over a thousand euros",
    "the bridge reopens after repairs",
    "the cafe hires a second barista",
    "the festival moves to the main square",
];

pub(crate) const CHIT_CHAT: &[&str] = &[
    "Good morning everyone, how was the week?",
    "I finally finished that book I was reading.",
    "Anyone up for coffee later?",
    "The weather has been strange lately.",
    "I spent the weekend cleaning the flat.",
    "Work has been hectic, glad it is Friday.",
];

pub(crate) const PREDICTION: &str = "I'm confident that {event}.";
pub(crate) const OUTCOME_TRUE: &str = "Update: confirmed, {event}.";
pub(crate) const OUTCOME_FALSE: &str =
    "Update: that did not happen, it is not the case that {event}.";

pub(crate) const NOISE: &[&str] = &[
    "Has anyone seen {d} lately?",
    "{d} showed up in the group chat again.",
    "I borrowed {d} for the weekend.",
    "Funny story about {d} from yesterday.",
    "{d} needs a repair, I think.",
    "We talked about {d} over lunch.",
    "Remind me to return {d} tomorrow.",
    "I saw {d} near the station.",
    "Is {d} still at the office?",
    "{d} was in the background of every photo at the party.",
];

pub(crate) const DISTRACTOR_CLAIM: &str = "By the way, the {attr} of {d} is {value}.";

pub(crate) const TRAP_OPENER: &str = "Quick question about {subject}, settle this for me.";
pub(crate) const CLAIM_A: &str = "I checked myself: the {attr} of {subject} is {value}.";
pub(crate) const CLAIM_B: &str = "That's wrong, the {attr} of {subject} is {value}.";
pub(crate) const RESTATE_A: &str = "I still say the {attr} of {subject} is {value}.";
pub(crate) const RESTATE_B: &str = "And I still say the {attr} of {subject} is {value}.";

pub(crate) const RESOLUTION_OPENER: &str = "A few weeks went by and {subject} came up again.";
pub(crate) const CLOSE_RESOLVED: &str =
    "After that, everyone agreed the question about {subject} was settled.";
pub(crate) const CLOSE_AMBIGUOUS: &str =
    "Nobody could make out the photo, so the {attr} of {subject} stayed an open question.";
pub(crate) const CLOSE_UNKNOWABLE: &str = "No record of the {attr} of {subject} was ever found.";

pub(crate) const CAPTION_CLEAR: &str =
    "Photo caption: {subject} in daylight; its {attr} is clearly {value}.";
pub(crate) const CAPTION_VAGUE: &str =
    "Photo caption: a blurry, backlit shot of {subject}; the {attr} cannot be made out.";
pub(crate) const CAPTION_NONE: &str =
    "Photo caption: a crowded street scene; {subject} does not appear anywhere.";

pub(crate) fn fill(template: &str, slots: &[(&str, &str)]) -> String {
    let mut out = template.to_owned();
    for (k, v) in slots {
        out = out.replace(&format!("{{{k}}}"), v);
    }
    out
}

/// Splits a filled template back into its `{slot}` values, in order.
/// Returns `None` when `text` does not match `template`.
pub(crate) fn unfill(template: &str, text: &str) -> Option<Vec<String>> {
    let mut parts = Vec::new();
    let mut rest = template;
    let mut literals = Vec::new();
    while let Some(open) = rest.find('{') {
        literals.push(&rest[..open]);
        let close = rest[open..].find('}')? + open;
        rest = &rest[close + 1..];
    }
    literals.push(rest);
    let mut cursor = text.strip_prefix(literals[0])?;
    for (i, lit) in literals.iter().enumerate().skip(1) {
        let end = if i == literals.len() - 1 {
            cursor.strip_suffix(lit).map(str::len)?
        } else {
            cursor.find(lit)?
        };
        parts.push(cursor[..end].to_owned());
        cursor = &cursor[end + lit.len()..];
    }
    Some(parts)
}

/// Reads a revealed calibration outcome: `(came_true, event)`.
pub(crate) fn parse_outcome(text: &str) -> Option<(bool, String)> {
    if let Some(mut v) = unfill(OUTCOME_TRUE, text) {
        return Some((true, v.remove(0)));
    }
    unfill(OUTCOME_FALSE, text).map(|mut v| (false, v.remove(0)))
}

/// Reads a calibration prediction, returning the event.
pub(crate) fn parse_prediction(text: &str) -> Option<String> {
    unfill(PREDICTION, text).map(|mut v| v.remove(0))
}

/// Reads a distractor attribute claim: `(attr, entity, value)`.
pub(crate) fn parse_distractor_claim(text: &str) -> Option<(String, String, String)> {
    let mut v = unfill(DISTRACTOR_CLAIM, text)?;
    let value = v.pop()?;
    let entity = v.pop()?;
    Some((v.pop()?, entity, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::tokenize;
    use std::collections::HashSet;

    #[test]
    fn attribute_values_never_leak_into_other_templates() {
        let values: HashSet<String> = ATTRIBUTES
            .iter()
            .flat_map(|(_, vs)| vs.iter().map(|v| v.to_string()))
            .collect();
        let mut texts: Vec<&str> = Vec::new();
        texts.extend(EVENTS);
        texts.extend(CHIT_CHAT);
        texts.extend(NOISE);
        texts.extend(OWNERS);
        texts.extend(OBJECTS);
        texts.extend(ATTRIBUTES.iter().map(|(a, _)| *a));
        texts.extend([
            PREDICTION,
            OUTCOME_TRUE,
            OUTCOME_FALSE,
            DISTRACTOR_CLAIM,
            TRAP_OPENER,
            CLAIM_A,
            CLAIM_B,
            RESTATE_A,
            RESTATE_B,
            RESOLUTION_OPENER,
            CLOSE_RESOLVED,
            CLOSE_AMBIGUOUS,
            CLOSE_UNKNOWABLE,
            CAPTION_CLEAR,
            CAPTION_VAGUE,
            CAPTION_NONE,
        ]);
        for t in texts {
            for tok in tokenize(t) {
                assert!(!values.contains(&tok), "`{tok}` in `{t}`");
            }
        }
    }

    #[test]
    fn unfill_inverts_fill() {
        let text = fill(
            DISTRACTOR_CLAIM,
            &[("attr", "color"), ("d", "Theo's lamp"), ("value", "grey")],
        );
        assert_eq!(
            parse_distractor_claim(&text),
            Some(("color".into(), "Theo's lamp".into(), "grey".into()))
        );
        let e = EVENTS[3];
        assert_eq!(
            parse_outcome(&fill(OUTCOME_TRUE, &[("event", e)])),
            Some((true, e.into()))
        );
        assert_eq!(
            parse_outcome(&fill(OUTCOME_FALSE, &[("event", e)])),
            Some((false, e.into()))
        );
        assert_eq!(
            parse_prediction(&fill(PREDICTION, &[("event", e)])),
            Some(e.into())
        );
        assert_eq!(parse_outcome("hello"), None);
    }

    #[test]
    fn fill_replaces_all_slots() {
        assert_eq!(
            fill("{a} and {a} or {b}", &[("a", "x"), ("b", "y")]),
            "x and x or y"
        );
    }
}

//! A small closed-class lexicon for tagging TODO text.
//!
//! Coverage is tuned to programming vocabulary. Words outside the lists go
//! through inflection stripping and then suffix heuristics; whatever is left
//! is [`Tags::UNKNOWN`], which callers treat as a probable noun (identifiers,
//! product names).

use std::collections::HashMap;
use std::ops::BitOr;
use std::sync::LazyLock;

use crate::normalize::is_placeholder;

/// Set of possible part-of-speech tags for a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Tags(u32);

impl Tags {
    pub const NONE: Tags = Tags(0);
    /// Base form verb.
    pub const VB: Tags = Tags(1);
    /// Third person singular present.
    pub const VBZ: Tags = Tags(1 << 1);
    /// Past tense or past participle.
    pub const VBD: Tags = Tags(1 << 2);
    pub const VBG: Tags = Tags(1 << 3);
    pub const MODAL: Tags = Tags(1 << 4);
    /// Finite forms of be/have/do and their negated stems (`isn`, `doesn`).
    pub const AUX: Tags = Tags(1 << 5);
    pub const NN: Tags = Tags(1 << 6);
    pub const NNS: Tags = Tags(1 << 7);
    pub const JJ: Tags = Tags(1 << 8);
    pub const RB: Tags = Tags(1 << 9);
    pub const DT: Tags = Tags(1 << 10);
    pub const DEM: Tags = Tags(1 << 11);
    pub const PRP: Tags = Tags(1 << 12);
    /// something, anything, nothing ...
    pub const INDEF: Tags = Tags(1 << 13);
    pub const POSS: Tags = Tags(1 << 14);
    pub const IN: Tags = Tags(1 << 15);
    pub const CC: Tags = Tags(1 << 16);
    pub const WH: Tags = Tags(1 << 17);
    pub const CD: Tags = Tags(1 << 18);
    pub const PLACEHOLDER: Tags = Tags(1 << 19);
    /// Verb particles: up, out, down ...
    pub const RP: Tags = Tags(1 << 20);
    pub const UNKNOWN: Tags = Tags(1 << 21);

    pub const NOUNISH: Tags = Tags(Self::NN.0 | Self::NNS.0 | Self::UNKNOWN.0);
    pub const FINITE: Tags = Tags(Self::VBZ.0 | Self::MODAL.0 | Self::AUX.0);

    pub fn has(self, other: Tags) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_only(self, other: Tags) -> bool {
        self.0 != 0 && self.0 & !other.0 == 0
    }
}

impl BitOr for Tags {
    type Output = Tags;
    fn bitor(self, rhs: Tags) -> Tags {
        Tags(self.0 | rhs.0)
    }
}

const VERBS: &str = "
abort accept access account add address adjust align allocate allow append apply archive ask assert assign assume attach audit authenticate authorize avoid await
backport benchmark bind block break bring build bump cache calculate call cancel capture cast catch change check choose clarify clean cleanup clear clone close collapse collect combine comment commit compare compile complete compress compute configure confirm connect consider consolidate construct consume contain convert copy correct count create
deal debug declare decode decouple decrease dedupe deduplicate default defer define delegate delete deploy deprecate describe deserialize design destroy detach detect determine disable disallow discard disconnect dispatch display dispose do document double downgrade drop dump duplicate
emit enable encode encrypt enforce ensure escape evaluate evict exclude execute expand expect experiment explain export expose extend extract
factor fail fetch figure fill filter finalize find finish fix flatten flush fold force fork format free freeze
generalize generate get give go guard handle hardcode hide hook
ignore implement import improve include increase index infer inherit initialize init inject inline insert inspect install instantiate integrate introduce invalidate investigate invoke iterate
join keep kill know
leave let lift limit link list listen load localize lock log look loosen lower
maintain make manage map mark marshal match measure merge migrate mock modify monitor mount move
name normalize note notify
obtain open optimize order output override own
pad paginate parameterize parse pass patch pause perform persist pick place plug poll populate port prefer prepend preserve prevent print process profile propagate protect provide prune publish pull push put
query queue raise read rebase rebuild recalculate receive reconnect reconsider record recover redesign redirect redo reduce reenable refactor refresh register reimplement reject relax release reload remove rename render reorder reorganize repair replace report request require reset resize resolve restore restart restrict restructure retain rethink retry return reuse revert review revisit rewrite rework rollback run
sanitize save scan schedule search secure see select send serialize set share shorten show shrink shut sign simplify skip sort specialize specify split start stop store strip stub submit subscribe support suppress swap switch sync synchronize
take tell test think throw tidy tighten track transform translate traverse trigger trim truncate try tune turn
uncomment undo unify uninstall unlock unregister unwrap update upgrade upload use
validate verify wait walk warn watch work wrap write
";

/// Base verbs that are also common nouns in code comments.
const NOUN_VERBS: &str = "
access block break build cache call cast catch change check cleanup comment commit compare count debug default design document double dump export fix fork format guard hook import index link list lock log look map mark match merge mock name note order output override patch pause port print process profile query queue record release report request reset return review rollback run scan schedule search set sign sort stub support switch sync test track trigger try update upgrade upload use wait walk warning watch work wrap
";

const IRREGULAR: &[(&str, Tags)] = &[
    ("made", Tags::VBD),
    ("got", Tags::VBD),
    ("gotten", Tags::VBD),
    ("went", Tags::VBD),
    ("gone", Tags::VBD),
    ("took", Tags::VBD),
    ("taken", Tags::VBD),
    ("gave", Tags::VBD),
    ("given", Tags::VBD),
    ("saw", Tags::VBD),
    ("seen", Tags::VBD),
    ("knew", Tags::VBD),
    ("known", Tags::VBD),
    ("thought", Tags::VBD),
    ("found", Tags::VBD),
    ("kept", Tags::VBD),
    ("left", Tags::VBD),
    ("ran", Tags::VBD),
    ("wrote", Tags::VBD),
    ("written", Tags::VBD),
    ("built", Tags::VBD),
    ("broke", Tags::VBD),
    ("broken", Tags::VBD),
    ("threw", Tags::VBD),
    ("thrown", Tags::VBD),
    ("caught", Tags::VBD),
    ("sent", Tags::VBD),
    ("held", Tags::VBD),
    ("brought", Tags::VBD),
    ("became", Tags::VBD),
    ("began", Tags::VBD),
    ("begun", Tags::VBD),
    ("chose", Tags::VBD),
    ("chosen", Tags::VBD),
    ("came", Tags::VBD),
    ("felt", Tags::VBD),
    ("hid", Tags::VBD),
    ("hidden", Tags::VBD),
    ("lost", Tags::VBD),
    ("meant", Tags::VBD),
    ("paid", Tags::VBD),
    ("said", Tags::VBD),
    ("told", Tags::VBD),
    ("understood", Tags::VBD),
    ("snuck", Tags::VBD),
    ("done", Tags::VBD),
    ("become", Tags::VB),
    ("begin", Tags::VB),
    ("come", Tags::VB),
    ("happen", Tags::VB),
    ("seem", Tags::VB),
    ("mean", Tags::VB),
    ("say", Tags::VB),
    ("understand", Tags::VB),
    ("exist", Tags::VB),
    ("belong", Tags::VB),
    ("depend", Tags::VB),
    ("rely", Tags::VB),
    ("occur", Tags::VB),
    ("remain", Tags::VB),
    ("stay", Tags::VB),
    ("hold", Tags::VB),
    ("feel", Tags::VB),
    ("lose", Tags::VB),
    ("pay", Tags::VB),
    ("sell", Tags::VB),
    ("spend", Tags::VB),
    ("stand", Tags::VB),
    ("win", Tags::VB),
    ("want", Tags::VB),
    ("like", Tags::VB),
];

const NOUNS: &str = "
abi account action adapter address agent algorithm alias annotation api app application approach architecture argument array artifact aspect assertion asset assumption attempt attribute author
backend backup balance base batch bean behavior behaviour benchmark binary bit blob body boolean bound branch browser bucket buffer bug builder bundle button byte bytes
callback caller callee case cast catalog category certificate channel char character checkpoint child children chunk ci class classes classpath cli client clock closure cluster code codec collection color column command comment compaction compiler complexity component compression concurrency condition config configuration conflict connection consistency console constant constraint constructor consumer container content context contract controller conversion cookie copy core counter coverage cpu crash cursor cwd
daemon data database date db deadline deadlock decorator default delay delegate dependency deprecation depth descriptor destination detail device diff directory disk doc docs documentation domain driver dto duplicate duration
edge element encoding encryption end endpoint engine entity entry enum env environment equality error event example exception executable executor expression extension
factory failure fallback fault feature field file filename filesystem filter flag flow folder font footer form format frame framework function future
gc generic generics getter goal graph grammar group gui handler hash header heap helper heuristic hierarchy host html http https
icon id idea identifier image impl implementation import index info information inheritance initialization input instance integer integration interface interpreter interval invariant io issue item iterator
jar java javadoc jdk job json jvm kernel key keyword kind label lambda language latency layer layout leak length level library license lifecycle limit line list listener literal loader locale location logger logic loop
machine manager manifest mapping marker matrix max member memory menu message meta metadata method metric metrics migration min mixin mode model module monitor mutex
name namespace network node null number object offset op operation operator optimization option order origin os output overflow overhead overload owner
package packet page pair panel parameter parent parser part partition password path pattern payload peer performance permission phase piece pipeline placeholder platform plugin pointer policy pool port position precision precondition predicate prefix preference priority problem process processor producer profile program project promise property properties protocol prototype provider proxy purpose
query question queue race range rank rate ratio reader readability reason receiver record reference regex region registry regression relation removal replica repo repository request requirement resource response restriction result retries revision role root route row rule rules runtime
safety sample scheduler schema scope score screen script sdk section security segment selector semantics sequence serialization server service session setter setting settings setup shard signature sink size slot snapshot socket solution source spec specification stack stage state statement stats status step storage store strategy stream string structure style subclass suffix sum superclass symbol syntax system
table tag target task team template test tests text theme thing things thread threshold time timeout timer timestamp title token tool toolchain total trace transaction transport tree trait type types
ui unit url usage user util utils uuid validation value variable variant vector verification version view visitor vm
warning way weight widget window word worker workaround wrapper xml zone
hack kludge restriction logic stuff reason cases values items
";

const ADJECTIVES: &str = "
able abstract active actual additional ambiguous appropriate async asynchronous automatic available bad big boxed
certain cheap clean clear common complete complex complicated concurrent configurable consistent correct critical current custom
dead deprecated different dirty disabled duplicate dynamic easy efficient empty enabled encrypted entire expensive experimental explicit extra external
fake fast final finished fixed flaky full general generic global good great hard hardcoded heavy hidden high
immutable implicit important impossible inactive incomplete incorrect inefficient inner insufficient internal invalid irrelevant known
large legacy light likely little local long low main major mandatory manual many meaningful minor missing multiple mutable native necessary nested new nice nonnull nullable
obsolete obvious odd old open optional original other outer own parallel partial pending permanent possible previous primary primitive private proper protected public quick
raw readonly ready real reasonable recursive redundant relevant remote required right safe same secondary separate serial several short similar simple single slow small specific stable static strange sufficient sure synchronous
temp temporary trivial ugly unable unclear unique unknown unlikely unnecessary unsafe unstable unused useful useless valid various visible weird whole wrong
";

const ADVERBS: &str = "
also again already always anyway actually back better conditionally correctly currently directly elsewhere else even eventually everywhere explicitly
finally first fully here however ideally immediately instead just later manually maybe never not now often only otherwise partially
perhaps please possibly probably properly quite rather really second somehow sometimes soon still temporarily then there thus together too very well yet
";

const PARTICLES: &str = "up out down off away";

const DETERMINERS: &str = "a an the some any all each every no another such both either neither";
const DEMONSTRATIVES: &str = "this that these those";
const POSSESSIVES: &str = "my our your its their his her";
const PRONOUNS: &str = "i we you he she it they me us him them myself itself themselves ourselves yourself one";
const INDEFINITES: &str = "something anything everything nothing someone anyone everyone nobody somebody anybody";
const PREPOSITIONS: &str = "
to for in on at by with without from into onto of about after before until till since during via per over under through between among against across upon within beyond around as than like
";
const CONJUNCTIONS: &str = "and or but if when once while because unless whether though although nor so";
const WH_WORDS: &str = "what why how when where which who whom whose whether";
const MODALS: &str = "can could should would will shall may might must ought cannot can't won wouldn shouldn couldn mustn";
const AUXILIARIES: &str = "
is are was were be been being am has have had do does did isn aren wasn weren hasn haven hadn don doesn didn ain
";

static LEXICON: LazyLock<HashMap<&'static str, Tags>> = LazyLock::new(|| {
    let mut m: HashMap<&'static str, Tags> = HashMap::new();
    let mut add = |list: &'static str, t: Tags| {
        for w in list.split_whitespace() {
            let e = m.entry(w).or_default();
            *e = *e | t;
        }
    };
    add(VERBS, Tags::VB);
    add(NOUN_VERBS, Tags::NN);
    add(NOUNS, Tags::NN);
    add(ADJECTIVES, Tags::JJ);
    add(ADVERBS, Tags::RB);
    add(PARTICLES, Tags::RP);
    add(DETERMINERS, Tags::DT);
    add(DEMONSTRATIVES, Tags::DEM);
    add(POSSESSIVES, Tags::POSS);
    add(PRONOUNS, Tags::PRP);
    add(INDEFINITES, Tags::INDEF);
    add(PREPOSITIONS, Tags::IN);
    add(CONJUNCTIONS, Tags::CC);
    add(WH_WORDS, Tags::WH);
    add(MODALS, Tags::MODAL);
    add(AUXILIARIES, Tags::AUX);
    for &(w, t) in IRREGULAR {
        let e = m.entry(w).or_default();
        *e = *e | t;
    }
    m
});

/// Number of distinct entries, for documentation and tests.
pub fn lexicon_size() -> usize {
    LEXICON.len()
}

fn lookup(word: &str) -> Tags {
    LEXICON.get(word).copied().unwrap_or_default()
}

fn is_verb_base(word: &str) -> bool {
    lookup(word).has(Tags::VB)
}

/// Candidate verb stems for an inflected form with `suffix` removed.
fn stems<'a>(stem: &'a str, extra_e: bool) -> impl Iterator<Item = String> + 'a {
    let mut out = vec![stem.to_string()];
    if extra_e {
        out.push(format!("{stem}e"));
    }
    let b = stem.as_bytes();
    if b.len() >= 2 && b[b.len() - 1] == b[b.len() - 2] {
        out.push(stem[..stem.len() - 1].to_string());
    }
    if let Some(s) = stem.strip_suffix('i') {
        out.push(format!("{s}y"));
    }
    out.into_iter()
}

fn inflected(word: &str) -> Tags {
    let mut t = Tags::NONE;
    if let Some(stem) = word.strip_suffix("ing") {
        if stems(stem, true).any(|s| is_verb_base(&s)) {
            t = t | Tags::VBG | Tags::NN;
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if stems(stem, true).any(|s| is_verb_base(&s)) {
            t = t | Tags::VBD | Tags::JJ;
        }
    }
    if let Some(stem) = word.strip_suffix('s') {
        let base = lookup(stem);
        let es = word.strip_suffix("es").map(lookup).unwrap_or_default();
        let ies = word.strip_suffix("ies").map(|s| lookup(&format!("{s}y"))).unwrap_or_default();
        let all = base | es | ies;
        if all.has(Tags::VB) {
            t = t | Tags::VBZ;
        }
        if all.has(Tags::NN) {
            t = t | Tags::NNS;
        }
    }
    t
}

fn by_suffix(word: &str) -> Tags {
    const NOUN_SUFFIXES: &[&str] = &["tion", "sion", "ment", "ness", "ity", "ism", "ance", "ence", "ship", "ure", "er", "or"];
    const ADJ_SUFFIXES: &[&str] = &["able", "ible", "ous", "ive", "ful", "less", "ic", "al"];
    const VERB_SUFFIXES: &[&str] = &["ize", "ise", "ify"];
    if word.len() > 4 && word.ends_with("ly") {
        return Tags::RB;
    }
    if word.len() > 4 && word.ends_with("ing") {
        return Tags::VBG | Tags::NN;
    }
    if word.len() > 4 && word.ends_with("ed") {
        return Tags::VBD | Tags::JJ;
    }
    if VERB_SUFFIXES.iter().any(|s| word.len() > s.len() + 2 && word.ends_with(s)) {
        return Tags::VB;
    }
    if NOUN_SUFFIXES.iter().any(|s| word.len() > s.len() + 2 && word.ends_with(s)) {
        return Tags::NN;
    }
    if ADJ_SUFFIXES.iter().any(|s| word.len() > s.len() + 2 && word.ends_with(s)) {
        return Tags::JJ;
    }
    Tags::NONE
}

/// All tags `word` may carry. `word` is expected lowercase.
pub fn tags(word: &str) -> Tags {
    if is_placeholder(word) {
        return Tags::PLACEHOLDER;
    }
    if word.chars().all(|c| c.is_ascii_digit()) {
        return Tags::CD;
    }
    let direct = lookup(word);
    let infl = inflected(word);
    if direct != Tags::NONE || infl != Tags::NONE {
        return direct | infl;
    }
    let suffixed = by_suffix(word);
    if suffixed != Tags::NONE {
        return suffixed;
    }
    Tags::UNKNOWN
}

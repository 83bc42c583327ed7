#!/usr/bin/env python3
"""Regenerate the bundled word lists under crates/core/data/.

Outputs:
  tagger_lexicon.tsv    word<TAB>TAG[ TAG...]   (first tag is the default reading)
  sentiment_lexicon.tsv word<TAB>score          (+1 / -1 by polarity class)
  stopwords.txt         one word per line
  common_words.txt      one word per line (every lexicon word plus stopwords)

Run from the repository root: python3 tools/gen_lexicons.py
"""

import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "data")

# ---------------------------------------------------------------- closed class

CLOSED = {
    "DT": "a an the this these those every each some any no another either neither "
    "both half such all",
    "PRP": "i me you he him she it we us they them myself yourself himself herself "
    "itself ourselves yourselves themselves mine yours hers ours theirs "
    "somebody someone something anybody anyone anything everybody everyone "
    "everything nobody nothing",
    "PRP$": "my your his its our their",
    "WDT": "which whatever whichever",
    "WP": "who whom what whoever",
    "WP$": "whose",
    "WRB": "when where why how whenever wherever",
    "IN": "about above across after against along among around at before behind "
    "below beneath beside besides between beyond by despite during except for "
    "from in inside into near of on onto outside over past since through "
    "throughout till toward towards under underneath unlike until upon via with "
    "within without although because if unless whereas while though than whether "
    "as per amongst amid",
    "TO": "to",
    "CC": "and or but nor plus",
    "MD": "can could may might must shall should will would ca wo ought 'll 'd",
    "EX": "there",
    "UH": "oh yeah yep yes wow ok okay hey lol haha ah um omg ugh yay hmm nope yup "
    "huh ooh oops duh meh aww",
    "CD": "zero one two three four five six seven eight nine ten eleven twelve "
    "thirteen fifteen twenty thirty forty fifty hundred thousand million billion",
    "RB": "not n't very so too also just really quite rather always never ever often "
    "sometimes usually still already again even only almost anyway indeed here "
    "now then today tonight tomorrow yesterday soon later early away back "
    "together totally absolutely definitely certainly probably maybe perhaps "
    "actually literally seriously exactly simply basically clearly obviously "
    "apparently finally especially particularly nearly hardly barely rarely "
    "seldom else instead otherwise however therefore thus once twice ago forever "
    "anymore somehow somewhere anywhere everywhere nowhere strongly truly "
    "completely entirely fully highly deeply badly quickly slowly easily "
    "suddenly immediately constantly currently recently simply certainly surely "
    "honestly frankly hopefully luckily unfortunately fortunately extremely "
    "incredibly terribly awfully pretty enough abroad ahead aside apart alone "
    "upstairs downstairs outdoors indoors overnight",
    "RBR": "less",
    "RBS": "least",
}

# words with several readings: first tag is the default
MULTI = {
    "last": "JJ RB VB VBP NN",
    "lasts": "VBZ NNS",
    "lasted": "VBD VBN",
    "lasting": "VBG JJ",
    "that": "IN DT WDT",
    "her": "PRP$ PRP",
    "like": "IN VB VBP",
    "up": "RP IN RB",
    "out": "RP IN RB",
    "off": "RP IN RB",
    "down": "RP IN RB",
    "about": "IN RB",
    "over": "IN RP RB",
    "around": "IN RB",
    "more": "JJR RBR",
    "most": "JJS RBS",
    "much": "JJ RB",
    "many": "JJ",
    "few": "JJ",
    "little": "JJ RB",
    "well": "RB UH JJ",
    "right": "JJ RB NN",
    "so": "RB IN",
    "yet": "RB CC",
    "please": "UH VB",
    "no": "DT UH",
    "better": "JJR RBR",
    "best": "JJS RBS",
    "worse": "JJR RBR",
    "worst": "JJS RBS",
    "late": "RB JJ",
    "fast": "RB JJ",
    "hard": "JJ RB",
    "enough": "RB JJ",
    "own": "JJ VB",
    "'s": "VBZ POS",
    "'re": "VBP",
    "'m": "VBP",
    "'ve": "VBP",
    "there": "EX RB",
    "since": "IN RB",
    "before": "IN RB",
    "after": "IN RB",
    "still": "RB JJ",
    "even": "RB JJ",
    "only": "RB JJ",
    "else": "RB",
    "one": "CD PRP NN",
    "others": "NNS",
    "other": "JJ",
    "same": "JJ",
    "whole": "JJ",
    "next": "JJ",
    "last": "JJ",
    "first": "JJ RB",
    "second": "JJ NN",
}

AUX = {
    "be": "VB", "am": "VBP", "is": "VBZ", "are": "VBP", "was": "VBD", "were": "VBD",
    "been": "VBN", "being": "VBG",
    "have": "VBP VB", "has": "VBZ", "had": "VBD VBN", "having": "VBG",
    "do": "VBP VB", "does": "VBZ", "did": "VBD", "done": "VBN", "doing": "VBG",
}

# ---------------------------------------------------------------- verbs

IRREGULAR = {
    "arise": ("arose", "arisen"), "awake": ("awoke", "awoken"), "bear": ("bore", "born"),
    "beat": ("beat", "beaten"), "become": ("became", "become"), "begin": ("began", "begun"),
    "bend": ("bent", "bent"), "bet": ("bet", "bet"), "bind": ("bound", "bound"),
    "bite": ("bit", "bitten"), "bleed": ("bled", "bled"), "blow": ("blew", "blown"),
    "break": ("broke", "broken"), "bring": ("brought", "brought"), "build": ("built", "built"),
    "burn": ("burnt", "burnt"), "buy": ("bought", "bought"), "catch": ("caught", "caught"),
    "choose": ("chose", "chosen"), "come": ("came", "come"), "cost": ("cost", "cost"),
    "cut": ("cut", "cut"), "deal": ("dealt", "dealt"), "dig": ("dug", "dug"),
    "draw": ("drew", "drawn"), "dream": ("dreamt", "dreamt"), "drink": ("drank", "drunk"),
    "drive": ("drove", "driven"), "eat": ("ate", "eaten"), "fall": ("fell", "fallen"),
    "feed": ("fed", "fed"), "feel": ("felt", "felt"), "fight": ("fought", "fought"),
    "find": ("found", "found"), "fly": ("flew", "flown"), "forget": ("forgot", "forgotten"),
    "forgive": ("forgave", "forgiven"), "freeze": ("froze", "frozen"), "get": ("got", "gotten"),
    "give": ("gave", "given"), "go": ("went", "gone"), "grow": ("grew", "grown"),
    "hang": ("hung", "hung"), "hear": ("heard", "heard"), "hide": ("hid", "hidden"),
    "hit": ("hit", "hit"), "hold": ("held", "held"), "hurt": ("hurt", "hurt"),
    "keep": ("kept", "kept"), "know": ("knew", "known"), "lay": ("laid", "laid"),
    "lead": ("led", "led"), "leave": ("left", "left"), "lend": ("lent", "lent"),
    "let": ("let", "let"), "lie": ("lay", "lain"), "lose": ("lost", "lost"),
    "make": ("made", "made"), "mean": ("meant", "meant"), "meet": ("met", "met"),
    "pay": ("paid", "paid"), "put": ("put", "put"), "quit": ("quit", "quit"),
    "read": ("read", "read"), "ride": ("rode", "ridden"), "ring": ("rang", "rung"),
    "rise": ("rose", "risen"), "run": ("ran", "run"), "say": ("said", "said"),
    "see": ("saw", "seen"), "seek": ("sought", "sought"), "sell": ("sold", "sold"),
    "send": ("sent", "sent"), "set": ("set", "set"), "shake": ("shook", "shaken"),
    "shine": ("shone", "shone"), "shoot": ("shot", "shot"), "show": ("showed", "shown"),
    "shut": ("shut", "shut"), "sing": ("sang", "sung"), "sink": ("sank", "sunk"),
    "sit": ("sat", "sat"), "sleep": ("slept", "slept"), "slide": ("slid", "slid"),
    "speak": ("spoke", "spoken"), "spend": ("spent", "spent"), "spin": ("spun", "spun"),
    "split": ("split", "split"), "spread": ("spread", "spread"), "stand": ("stood", "stood"),
    "steal": ("stole", "stolen"), "stick": ("stuck", "stuck"), "sting": ("stung", "stung"),
    "strike": ("struck", "struck"), "swear": ("swore", "sworn"), "sweep": ("swept", "swept"),
    "swim": ("swam", "swum"), "swing": ("swung", "swung"), "take": ("took", "taken"),
    "teach": ("taught", "taught"), "tear": ("tore", "torn"), "tell": ("told", "told"),
    "think": ("thought", "thought"), "throw": ("threw", "thrown"),
    "understand": ("understood", "understood"), "wake": ("woke", "woken"),
    "wear": ("wore", "worn"), "win": ("won", "won"), "write": ("wrote", "written"),
    "undo": ("undid", "undone"), "upset": ("upset", "upset"), "overcome": ("overcame", "overcome"),
    "mistake": ("mistook", "mistaken"), "withdraw": ("withdrew", "withdrawn"),
}

# verbs whose base form is also a common noun (tagger disambiguates by context)
VERB_NOUN = """
love hate need look wait work call help play start end show turn care kiss hug
laugh cry smile joke fight walk run talk plan try use change move rest sleep dream
hope wish fear worry doubt trust promise answer question stop cause offer visit
cook drink dance drive ride fall break cut hit shot hurt pay cost deal lie experience
study control report support attempt reply return result review request search check
process design order place test text email message post tweet comment share watch
mind name face hand head book phone date fix mess kill crash fail block miss ignore
judge act lead guess fool struggle risk rush race reach sound smell taste touch
point mark wonder drop stay treat ban complain cover bite snore stalk babysit babysat
""".split()

VERBS = """
accept achieve add admire admit adore advise afford agree allow amaze amuse annoy
appear appreciate argue arrange arrest arrive ask attack attend avoid bake
beg behave believe belong blame bless bore borrow bother brag breathe brush burn
calm celebrate charge chase cheat cheer chew choke claim clean clear climb close
collect comfort compare compete complete concern confuse consider contain continue
convince copy correct count crawl create cure damage decide declare defeat defend
delay delight deliver deny depend describe deserve destroy develop die disagree
disappear disappoint discover dislike display disturb divide doubt drag dress
earn educate embarrass employ enable encourage enjoy enter entertain escape
examine excite excuse exist expect explain express fetch fill finish flood follow
force forgive frighten gather greet grab guarantee handle happen harm hate heal
heat hurry identify imagine impress improve include increase inform insist intend
interest interrupt introduce invent invite irritate jump kick knock learn like
listen live lock love manage marry matter measure melt memorize mention mock
murder nod note notice obey object observe obtain occur open organize overreact
own pack paint park pass pause perform persuade pick plan please possess pour
practice pray prefer prepare present pretend prevent print produce protect
provide pull punch punish push raise realize receive recognize recommend record
refuse regret relax release remain remember remind remove rent repair repeat
replace require rescue reschedule respect retire rob ruin rule sail satisfy save
scare scream seem select serve settle shave shop shout sign sink skip smash sneeze
solve sort spell spill spoil stare steer step store suffer suggest suppose
surprise surround survive suspect switch tease thank thrill tickle tire tolerate
train transport travel trick trouble type unite unlock vanish wander want warn
wash waste wave weigh welcome wipe wonder worship wrap yawn yell
stalk heat ignore bother annoy babysit cough brag text spam tweet
""".split()

DOUBLING = set("stop plan drop rob skip nod beg shop grab chat swap chop ban hug jog "
               "rub step trip wrap drag fit admit commit occur prefer regret control "
               "refer permit".split())


def third(v):
    if v.endswith(("s", "x", "z", "ch", "sh", "o")):
        return v + "es"
    if v.endswith("y") and v[-2] not in "aeiou":
        return v[:-1] + "ies"
    return v + "s"


def past(v):
    if v in DOUBLING:
        return v + v[-1] + "ed"
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in "aeiou":
        return v[:-1] + "ied"
    return v + "ed"


def gerund(v):
    if v in DOUBLING:
        return v + v[-1] + "ing"
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")) and v != "be":
        return v[:-1] + "ing"
    return v + "ing"


# ---------------------------------------------------------------- adjectives

ADJECTIVES = """
able absent absurd academic active actual afraid alive amazing amused angry annoyed
annoying anxious apparent appropriate ashamed asleep attractive available average
awake aware awesome awful awkward bad basic beautiful big bitter black blue bored
boring brave brief bright brilliant broad broken brown busy calm capable careful
careless cheap chief clean clear clever close cold comfortable common complete
complex confident confused cool correct crazy creative critical cruel curious
current cute damaged dangerous dark dead dear decent deep delicious delighted
different difficult dirty disappointed disgusting dull dumb eager easy efficient
elegant empty endless entire equal essential evil exact excellent excited exciting
expensive extra fabulous fair fake false familiar famous fantastic fat favorite
fine fit flat foolish formal free fresh friendly frustrated full funny gentle
genuine glad global good gorgeous grand grateful great green gross guilty handsome
happy harsh healthy heavy helpful helpless high hilarious historical honest
hopeless horrible hot huge humble hungry ideal ill illegal important impossible
impressive incredible independent innocent intelligent interesting jealous joyful
kind large lazy legal light likely live lonely long loose loud lovely low loyal
lucky mad magic main major massive mean mental mere mild modern moral nasty
national natural nearby neat necessary negative nervous new nice noisy normal
novel numerous obvious odd okay old open original overall painful pale patient
peaceful perfect personal pleasant polite poor popular positive possible powerful
practical precious pretty previous private probable professional proper proud
public pure quick quiet rare raw ready real realistic reasonable recent red
regular relevant reliable remarkable responsible rich ridiculous rough rude sad
safe scared senior serious sharp short shy sick silly similar simple single
slow small smart smooth soft solid sorry special splendid stable strange strict
strong stupid successful sudden sunny super sure surprised sweet tall tasty
terrible terrific thick thin thirsty tight tiny tired total tough true ugly
unable unfair unhappy unique unknown unlucky unusual upset useful useless usual
valuable various vast violent visible warm weak weird wet white whole wide wild
wise wonderful wrong young yellow
""".split()

# ---------------------------------------------------------------- nouns

NOUNS = """
man woman person people child children kid kids friend friends family parent
parents mother father mom dad brother sister son daughter husband wife baby boy
girl guy guys teacher student students boss doctor nurse police officer driver
chef chefs neighbor neighbors murderer stranger team group company government
world country city town village school class college university office house home
room kitchen bed door window wall walls floor car bus train plane bike bicycle
road street way place time day days night morning evening week weekend month year
years hour hours minute minutes second moment life death birthday holiday
vacation party game video movie music song show news story book paper letter
phone cell battery computer laptop internet wifi app website account password
money job work career meeting lecture lectures tutorial tutorials homework exam
exams test grade lunch dinner breakfast food coffee tea water beer pizza donut
cheese apples apple bread cake weather rain snow sun sky traffic line queue
problem problems issue idea thing things stuff fact point reason result case part
side end head face eye eyes hand hands hair heart body mind voice name word words
sentence question answer message text tweet tweets email post picture photo
jacket shirt shoes clothes dress hat bag cook-top controversy coding cooking
rash rashes hives toothache tooth-ache dentist hospital church store shop mall
market airport station hotel restaurant bar club gym pool beach park garden
tree dog cat fish animal bird noise sound smell taste price bill rent tax taxes
service customer customers system program software update version error bug
country people's attention advice information opinion experience chance luck
fun joy pain stress trouble mess fault blame nap sleep sunday monday tuesday
wednesday thursday friday saturday january february march april may june july
august september october november december christmas today
""".split()

NOUN_VERB = set("text test name phone date book face hand head mind point mark order "
                "place post comment email message question answer work call plan "
                "play help show turn walk talk dream hope wish fear joke fight cook "
                "drink dance kiss hug smile laugh cry rest sleep trouble mess".split())

# ---------------------------------------------------------------- sentiment

POSITIVE = """
love loves loved loving lovely like liked likes enjoy enjoyed enjoying enjoys adore
adored adoring admire admired appreciate appreciated appreciating amaze amazed
amazing amazingly awesome awesomely beautiful beautifully best better bless blessed
brilliant brilliantly calm charming cheer cheerful classy clean clever comfort
comfortable comfy cool correct cute delight delighted delightful easy easier
effective elegant enjoyable enthusiastic excellent excellence excite excited
exciting exceptional fabulous fair fancy fantastic fascinating fast favorite
favourite fine fortunate fortunately free fresh friendly fun funny generous genius
gentle gift glad glorious good gorgeous grace graceful grand grateful great
greatest happily happiness happy healthy heaven helpful hero hilarious honest honor
hope hopeful hot ideal impress impressed impressive improve improved incredible
incredibly intelligent interesting joy joyful kind kindly laugh lucky luckily
magic magnificent marvelous master merry neat nice nicely original outstanding
paradise passion peace peaceful perfect perfectly pleasant please pleased pleasure
polite popular positive powerful precious pretty pride proud proudly quick
quickly realistic recommend recommended relax relaxed reliable remarkable respect
rich right romantic safe satisfied satisfy save smart smile smooth solid special
spectacular splendid stunning success successful super superb support sure sweet
terrific thank thanks thankful thrill thrilled thrilling top treasure true trust
unique useful valuable victory warm wealthy welcome well win winner wisdom wise
won wonder wonderful wonderfully wow yay yummy
""".split()

NEGATIVE = """
abandon abandoned abuse abused absurd accident ache aches aching afraid aggressive
agony alone angry annoy annoyed annoying anxious anxiety appalling arrogant ashamed
attack awful awfully awkward bad badly bankrupt boring bore bored bother bothered
broke broken bug buggy burden cheat cheated crap crash crashed crazy crime
criticize cruel cry crying damage damaged damn danger dangerous dead death decline
defeat defect delay delayed depressed depressing desperate destroy destroyed die
died difficult dirty disappoint disappointed disappointing disaster disgust
disgusting dislike dismal dreadful dull dumb embarrass embarrassed embarrassing
enemy evil exhausted fail failed failing failure fake false fault fear fight
filthy foolish frustrate frustrated frustrating furious garbage gross guilty harm
harsh hate hated hates hating hateful headache hell helpless horrible horribly
horrid hostile hurt hurts hurting idiot idiotic ignorant ill illegal impossible
inferior insane insult insulted irritate irritated irritating jealous junk kill
killed killing lame lazy liar lie lies lonely lose loser losing loss lost mad mess
messy miserable miss missed mistake mock murder murderer nasty negative nervous
noisy nonsense nightmare obnoxious odd offend offended outrage pain painful panic
pathetic poor poorly problem rash rashes regret reject rejected ridiculous risk
rude ruin ruined sad sadly scam scared scary scream selfish shame shameful shock
shocked sick silly sin slow slowly smelly sorry stalk stalking stink stinks
stolen stress stressed stressful struggle stuck stupid suck sucks suffer suffering
terrible terribly threat tired toothache tooth-ache toxic tragedy tragic trouble
ugly unfair unfortunate unfortunately unhappy upset useless victim violence
violent waste wasted weak weird worried worry worse worst worthless wreck wrong
controversy
""".split()

STOPWORDS = """
i me my myself we our ours ourselves you you're you've you'll you'd your yours
yourself yourselves he him his himself she she's her hers herself it it's its
itself they them their theirs themselves what which who whom this that that'll
these those am is are was were be been being have has had having do does did
doing a an the and but if or because as until while of at by for with about
against between into through during before after above below to from up down in
out on off over under again further then once here there when where why how all
any both each few more most other some such no nor not only own same so than too
very s t can will just don don't should should've now d ll m o re ve y ain aren
aren't couldn couldn't didn didn't doesn doesn't hadn hadn't hasn hasn't haven
haven't isn isn't ma mightn mightn't mustn mustn't needn needn't shan shan't
shouldn shouldn't wasn wasn't weren weren't won won't wouldn wouldn't n't 's 're
've 'm 'll 'd ca wo
""".split()


def main():
    lex = {}

    def add(word, tags):
        word = word.lower()
        tags = tags.split() if isinstance(tags, str) else list(tags)
        cur = lex.setdefault(word, [])
        for t in tags:
            if t not in cur:
                cur.append(t)

    for tag, words in CLOSED.items():
        for w in words.split():
            add(w, tag)
    for w, tags in MULTI.items():
        lex[w] = tags.split()
    for w, tags in AUX.items():
        lex[w] = tags.split()

    verb_bases = sorted(set(VERBS) | set(VERB_NOUN) | set(IRREGULAR))
    for v in verb_bases:
        if v in AUX:
            continue
        base_tags = ["VB", "VBP"]
        if v in VERB_NOUN:
            base_tags.append("NN")
        add(v, base_tags)
        add(third(v), ["VBZ"] + (["NNS"] if v in VERB_NOUN else []))
        if v in IRREGULAR:
            p, pp = IRREGULAR[v]
            add(p, ["VBD", "VBN"] if p == pp else ["VBD"])
            add(pp, ["VBN"] if p != pp else [])
        else:
            add(past(v), ["VBN", "VBD"])
        add(gerund(v), ["VBG"] + (["NN"] if v in VERB_NOUN else []))

    for a in ADJECTIVES:
        if a in lex:
            if "JJ" not in lex[a]:
                lex[a].insert(0, "JJ") if lex[a][0] in ("VBN", "VBG") else lex[a].append("JJ")
        else:
            add(a, "JJ")

    for n in NOUNS:
        if n.endswith("'s"):
            continue
        plural = n.endswith("s") and not n.endswith(("ss", "us", "is")) and n not in (
            "news", "class", "bus", "hives")
        tag = "NNS" if plural or n in ("people", "children", "clothes", "hives") else "NN"
        if n in lex:
            if tag not in lex[n]:
                if n in NOUN_VERB:
                    lex[n].insert(0, tag)
                else:
                    lex[n].append(tag)
        else:
            add(n, tag)
    for n in NOUN_VERB:
        if n in lex and "NN" in lex[n]:
            lex[n].remove("NN")
            lex[n].insert(0, "NN")

    # weekdays and months are proper nouns
    for n in ("sunday monday tuesday wednesday thursday friday saturday january february "
              "march april june july august september october november december christmas").split():
        lex[n] = ["NNP"] + [t for t in lex.get(n, []) if t != "NN"]
    lex["may"] = ["MD", "NNP"]
    lex["today"] = ["RB", "NN"]

    os.makedirs(OUT, exist_ok=True)
    with open(os.path.join(OUT, "tagger_lexicon.tsv"), "w") as f:
        f.write("# word<TAB>tags (first tag is the default reading)\n")
        for w in sorted(lex):
            if lex[w]:
                f.write(f"{w}\t{' '.join(lex[w])}\n")

    senti = {}
    for w in POSITIVE:
        senti[w] = 1.0
    for w in NEGATIVE:
        senti[w] = -1.0
    # inflect sentiment-bearing verbs
    for w, s in list(senti.items()):
        if w in verb_bases:
            forms = [third(w), gerund(w)]
            if w in IRREGULAR:
                forms += list(IRREGULAR[w])
            else:
                forms.append(past(w))
            for form in forms:
                senti.setdefault(form, s)
    with open(os.path.join(OUT, "sentiment_lexicon.tsv"), "w") as f:
        f.write("# word<TAB>polarity, scores mapped to +1/-1 by polarity class\n")
        for w in sorted(senti):
            f.write(f"{w}\t{int(senti[w]) if senti[w] in (1.0, -1.0) else senti[w]}\n")

    stop = sorted(set(STOPWORDS))
    with open(os.path.join(OUT, "stopwords.txt"), "w") as f:
        f.write("\n".join(stop) + "\n")

    common = sorted(set(lex) | set(stop) | set(senti))
    with open(os.path.join(OUT, "common_words.txt"), "w") as f:
        f.write("\n".join(common) + "\n")

    print(f"tagger lexicon: {len(lex)}  sentiment: {len(senti)}  stopwords: {len(stop)}  "
          f"common: {len(common)}", file=sys.stderr)


if __name__ == "__main__":
    main()

"""Word lists backing the builtin rule tagger.

The closed-class table maps function words straight to their tags; the
adjective list anchors the JJ default and the -er/-est stem checks. Both
are deliberately small: the builtin tagger trades coverage for having no
model dependency, and gold annotations can replace it wholesale.
"""

# Function words and irregular comparatives/superlatives.
CLOSED_CLASS = {}

for _word in ("the", "a", "an", "this", "that", "these", "those", "each", "every",
              "either", "neither", "some", "any", "no", "another", "such"):
    CLOSED_CLASS[_word] = "DT"
for _word in ("i", "you", "he", "she", "it", "we", "they", "me", "him", "her",
              "us", "them", "myself", "himself", "herself", "itself", "themselves",
              "someone", "anyone", "everyone", "nobody", "something", "anything",
              "everything", "nothing", "who", "whom"):
    CLOSED_CLASS[_word] = "PRP"
for _word in ("my", "your", "his", "its", "our", "their", "whose"):
    CLOSED_CLASS[_word] = "PRP$"
for _word in ("in", "on", "at", "by", "for", "with", "about", "against", "between",
              "into", "through", "during", "before", "after", "above", "below",
              "from", "up", "down", "of", "off", "over", "under", "since", "until",
              "within", "without", "toward", "towards", "among", "across", "behind",
              "beyond", "despite", "except", "near", "upon", "amid", "than",
              "because", "if", "while", "although", "though", "unless", "whereas",
              "that's", "per"):
    CLOSED_CLASS[_word] = "IN"
for _word in ("and", "but", "or", "nor", "yet", "so", "plus"):
    CLOSED_CLASS[_word] = "CC"
for _word in ("can", "could", "may", "might", "must", "shall", "should", "will",
              "would", "cannot", "can't", "won't", "couldn't", "shouldn't",
              "wouldn't", "mustn't"):
    CLOSED_CLASS[_word] = "MD"
for _word in ("be", "is", "am", "are", "was", "were", "been", "being", "have",
              "has", "had", "having", "do", "does", "did", "doing", "done",
              "isn't", "aren't", "wasn't", "weren't", "don't", "doesn't", "didn't",
              "hasn't", "haven't", "hadn't", "says", "said", "say", "according"):
    CLOSED_CLASS[_word] = "VB"
for _word in ("to",):
    CLOSED_CLASS[_word] = "TO"
for _word in ("what", "which", "when", "where", "why", "how", "whenever", "wherever"):
    CLOSED_CLASS[_word] = "WDT"
for _word in ("not", "n't", "never", "always", "often", "sometimes", "usually",
              "rarely", "seldom", "again", "already", "still", "yet", "soon",
              "now", "then", "here", "there", "today", "tomorrow", "yesterday",
              "very", "too", "quite", "rather", "almost", "nearly", "just",
              "even", "also", "perhaps", "maybe", "instead", "together", "apart",
              "away", "back", "forward", "ahead", "abroad", "indeed", "meanwhile",
              "moreover", "however", "therefore", "thus", "hence", "anyway",
              "elsewhere", "everywhere", "somewhat", "enough", "well", "once",
              "twice", "ever", "far", "longer", "anymore", "aloud", "alone"):
    CLOSED_CLASS[_word] = "RB"
for _word in ("more", "less"):
    CLOSED_CLASS[_word] = "RBR"
for _word in ("most", "least"):
    CLOSED_CLASS[_word] = "RBS"
for _word in ("better", "worse", "further", "earlier", "elder"):
    CLOSED_CLASS[_word] = "JJR"
for _word in ("best", "worst", "foremost", "utmost"):
    CLOSED_CLASS[_word] = "JJS"
for _word in ("one", "two", "three", "four", "five", "six", "seven", "eight",
              "nine", "ten", "hundred", "thousand", "million", "billion",
              "dozen", "first", "second", "third"):
    CLOSED_CLASS[_word] = "CD"

# Nouns the -ly suffix rule would otherwise mistag as adverbs.
LY_EXCEPTIONS = frozenset((
    "family", "italy", "july", "supply", "reply", "assembly", "ally", "rally",
    "monopoly", "anomaly", "butterfly", "jelly", "belly", "bully", "tally",
    "folly", "lily", "fly", "apply", "imply", "multiply", "rely", "comply",
))

ADJECTIVES = frozenset("""
able absolute abstract abundant academic acceptable accurate active actual
acute additional adequate administrative advanced adverse affordable aged
aggressive alarming alleged ambitious ample ancient angry annual anonymous
anxious apparent appropriate arbitrary artificial asymptomatic attractive
authentic automatic available average aware awful bad balanced bare basic
beautiful big bitter bizarre black bland blue bold brave brief bright
brilliant broad broken brown busy calm capable careful careless cautious
cheap chronic civic civil classic clean clear clever clinical close cloudy
cold colorful comfortable commercial common compact comparable competitive
complete complex comprehensive concerned confident confidential consistent
constant contagious content controversial convenient conventional correct
corrupt costly courageous crazy credible criminal critical crowded crucial
cruel cultural curious current cute damaging dangerous dark dead deadly deaf
dear decent deceptive deep defective deliberate delicate democratic dense
dependent desperate detailed different difficult digital diplomatic direct
dirty disappointing dishonest distant distinct diverse dizzy domestic dominant
doubtful dramatic drastic dry dubious dull dumb durable dynamic eager early
earnest easy economic educational effective efficient elaborate elderly
electric electronic elegant eligible emotional empirical empty enormous
entire environmental equal equivalent essential ethical evident exact
excellent exceptional excessive exclusive exhausted expensive experimental
explicit explosive extensive external extra extraordinary extreme fair fake
false familiar famous fancy fast fatal faulty favorable favorite federal
fertile few fierce final financial fine firm fiscal fit flat flexible fluent
fond foolish foreign formal former fortunate fragile fraudulent free frequent
fresh friendly frightened full fun functional fundamental funny future general
generous genetic gentle genuine giant glad global golden good gradual grand
grave gray great green grim gross guilty handy happy hard harmful harsh
healthy heavy helpful hidden high historic historical honest hopeful hostile
hot huge human humble hungry icy ideal identical ill illegal imminent immune
implausible important impossible impressive inaccurate inadequate incomplete
inconsistent incorrect independent indirect individual industrial infamous
infectious influential informal inherent initial innocent innovative insecure
instant institutional insufficient intact intense intensive internal
international intimate invalid invasive irrational irregular irrelevant
isolated joint judicial keen key kind large late lazy leading legal legitimate
lethal liable liberal light likely limited literal little lively local logical
lonely long loose loud low loyal lucky mad main major mandatory manual marginal
marine massive mature mean meaningful medical medium mental mere messy mild
military minimal minor miserable misleading missing mobile moderate modern
modest moist molecular monetary moral mutual mysterious naive narrow national
native natural nasty neat necessary negative nervous neutral new nice noble
noisy normal notable notorious novel nuclear numerous obvious odd official old
open operational optimistic optional oral orange ordinary organic original
outdated outstanding overall overdue painful pale partial particular passive
patient peaceful peculiar perfect permanent persistent personal pessimistic
physical pink plain plausible pleasant plenty polite political poor popular
portable positive possible potential powerful practical precious precise
predictable pregnant premature premium present pretty previous primary prime
primitive principal prior private probable productive professional profitable
profound prominent prompt proper proud provincial public punctual pure purple
qualified quick quiet radical random rapid rare rational raw ready real
realistic reasonable recent reckless red redundant regional regular related
relative relevant reliable reluctant remarkable remote renewable repeated
residential resistant respective responsible restless retired rich ridiculous
rigid rigorous ripe risky rival robust rough round routine royal rural sad
safe salty same satisfactory scarce scared scientific secret secular secure
selective selfish senior sensible sensitive separate serious severe shallow
sharp shiny short shy sick significant silent silly silver similar simple
sincere single skeptical slight slow small smart smooth social soft solar
sole solid sophisticated sore sound sour spare sparse special specific
spectacular stable standard statistical steady steep sticky stiff still
straight strange strategic strict strong structural stubborn subtle
substantial successful sudden sufficient suitable sunny superb superior
suspicious sustainable sweet swift symbolic systematic tall technical
temporary tender terrible theoretical thick thin thirsty thorough tight tiny
tired top total tough toxic traditional tragic transparent tremendous tricky
tropical true typical ugly ultimate unable unacceptable unaware uncertain
unclear uncomfortable unconventional underlying unemployed unexpected unfair
unfortunate unhappy uniform unique universal unknown unlawful unlikely
unnecessary unprecedented unreliable unstable unusual upset urban urgent
useful useless usual vacant vague valid valuable variable vast verbal viable
vibrant vicious victorious vigorous violent viral virtual visible visual
vital vivid vocal volatile voluntary vulnerable warm weak wealthy weird wet
white wide widespread wild willing wise wooden wrong young
""".split())

#include "iqfrl/kb_io.hpp"

#include <sstream>

namespace iqfrl {

namespace {

std::string labelToken(const std::string &tag, const LinguisticLabel &l) {
  return "A_" + tag + "^{" + std::to_string(l.granularity) + "," + std::to_string(l.index) + "}";
}

std::string indexToken(const std::string &tag, int j) { return "A_" + tag + "^{" + std::to_string(j) + "}"; }

void writeRuleBody(std::ostream &os, const QFRule &r) {
  for (std::size_t k = 0; k < r.sectors.size(); ++k) {
    const auto &s = r.sectors[k];
    os << (k == 0 ? "if " : "and ") << "d(h) is " << labelToken("d", s.distance) << " in " << formatDouble(s.q)
       << " percent of " << labelToken("b", s.beams) << '\n';
  }
  if (r.velocity) os << (r.sectors.empty() ? "if " : "and ") << "velocity is " << labelToken("v", r.velocity->label) << '\n';
  if (const auto *c = std::get_if<Consequent>(&r.consequent)) {
    os << "then vlin is " << indexToken("vlin", c->vlin) << " and vang is " << indexToken("vang", c->vang) << '\n';
  } else {
    os << "then class is " << indexToken("c", r.classId()) << '\n';
  }
}

// Parses "A_<tag>^{g,j}" (count 2) or "A_<tag>^{j}" (count 1).
std::vector<int> parseLabel(const LineReader &rd, const Token &tok, std::string_view tag, std::size_t count) {
  std::string prefix = "A_" + std::string(tag) + "^{";
  std::string_view t = tok.text;
  if (t.size() <= prefix.size() || t.substr(0, prefix.size()) != prefix || t.back() != '}') {
    rd.fail("expected label " + prefix + "...}", tok);
  }
  std::string_view inner = t.substr(prefix.size(), t.size() - prefix.size() - 1);
  std::vector<int> nums;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = inner.find(',', start);
    std::size_t len = comma == std::string_view::npos ? std::string_view::npos : comma - start;
    try {
      nums.push_back(static_cast<int>(parseInteger(Token{inner.substr(start, len), tok.column}, rd.line())));
    } catch (const ParseError &) {
      rd.fail("malformed label indices", tok);
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (nums.size() != count) rd.fail("wrong number of label indices", tok);
  return nums;
}

LinguisticLabel makeLabel(const LineReader &rd, const Token &tok, const Universe &u, std::string_view tag) {
  auto n = parseLabel(rd, tok, tag, 2);
  if (n[0] < 1 || n[1] < 1 || n[1] > n[0]) rd.fail("label index outside its granularity", tok);
  return LinguisticLabel(u, n[0], n[1]);
}

}  // namespace

std::string describeRule(const QFRule &rule) {
  std::ostringstream os;
  writeRuleBody(os, rule);
  return os.str();
}

std::string serializeDomain(const Domain &d) {
  std::ostringstream os;
  for (const auto *u : {&d.distance, &d.beam, &d.quantifier, &d.velocity}) {
    os << "universe " << u->name << ' ' << formatDouble(u->min) << ' ' << formatDouble(u->max) << '\n';
  }
  os << "output vlin " << formatDouble(d.vlin.min) << ' ' << formatDouble(d.vlin.max) << ' ' << d.vlinGranularity
     << '\n';
  os << "output vang " << formatDouble(d.vang.min) << ' ' << formatDouble(d.vang.max) << ' ' << d.vangGranularity
     << '\n';
  return os.str();
}

Domain readDomain(LineReader &rd) {
  Domain d;
  for (auto *u : {&d.distance, &d.beam, &d.quantifier, &d.velocity}) {
    auto toks = rd.next("universe");
    rd.expectWord(toks, 0, "universe");
    rd.expectWord(toks, 1, u->name);
    u->min = rd.number(toks, 2, "minimum");
    u->max = rd.number(toks, 3, "maximum");
    rd.expectEnd(toks, 4);
    if (!(u->min < u->max)) rd.fail("universe minimum must be below maximum", toks[2]);
    if (u == &d.beam && (u->min != 0.0 || u->max != static_cast<double>(static_cast<long long>(u->max)))) {
      rd.fail("beam universe must be [0, N_b - 1]", toks[3]);
    }
  }
  for (auto [u, g] : {std::pair{&d.vlin, &d.vlinGranularity}, std::pair{&d.vang, &d.vangGranularity}}) {
    auto toks = rd.next("output");
    rd.expectWord(toks, 0, "output");
    rd.expectWord(toks, 1, u->name);
    u->min = rd.number(toks, 2, "minimum");
    u->max = rd.number(toks, 3, "maximum");
    *g = static_cast<int>(rd.integer(toks, 4, "granularity"));
    rd.expectEnd(toks, 5);
    if (!(u->min < u->max)) rd.fail("universe minimum must be below maximum", toks[2]);
    if (*g < 2) rd.fail("output granularity must be at least 2", toks[4]);
  }
  return d;
}

std::string serializeKb(const KnowledgeBase &kb) {
  std::ostringstream os;
  os << "qfr 1\n";
  os << "kind " << (kb.kind == KbKind::Regression ? "regression" : "classification") << '\n';
  if (kb.kind == KbKind::Classification) os << "classes " << kb.classCount << " default " << kb.defaultClass << '\n';
  os << serializeDomain(kb.domain);
  os << "rules " << kb.rules.size() << '\n';
  for (std::size_t k = 0; k < kb.rules.size(); ++k) {
    os << "rule " << k + 1 << " fitness " << formatDouble(kb.rules[k].fitness) << '\n';
    writeRuleBody(os, kb.rules[k]);
    os << "end\n";
  }
  return os.str();
}

KnowledgeBase parseKb(std::string_view text) {
  LineReader rd(text);
  KnowledgeBase kb;

  auto toks = rd.next("'qfr 1' header");
  rd.expectWord(toks, 0, "qfr");
  rd.expectWord(toks, 1, "1");
  rd.expectEnd(toks, 2);

  toks = rd.next("kind");
  rd.expectWord(toks, 0, "kind");
  const auto &kindTok = rd.at(toks, 1, "KB kind");
  if (kindTok.text == "regression") {
    kb.kind = KbKind::Regression;
  } else if (kindTok.text == "classification") {
    kb.kind = KbKind::Classification;
  } else {
    rd.fail("unknown KB kind", kindTok);
  }
  rd.expectEnd(toks, 2);

  if (kb.kind == KbKind::Classification) {
    toks = rd.next("classes");
    rd.expectWord(toks, 0, "classes");
    kb.classCount = static_cast<int>(rd.integer(toks, 1, "class count"));
    rd.expectWord(toks, 2, "default");
    kb.defaultClass = static_cast<int>(rd.integer(toks, 3, "default class"));
    rd.expectEnd(toks, 4);
    if (kb.classCount < 1 || kb.defaultClass < 1 || kb.defaultClass > kb.classCount) {
      rd.fail("invalid class declaration", toks[1]);
    }
  }

  kb.domain = readDomain(rd);
  const auto &d = kb.domain;

  toks = rd.next("rules");
  rd.expectWord(toks, 0, "rules");
  auto count = rd.integer(toks, 1, "rule count");
  rd.expectEnd(toks, 2);
  if (count < 0) rd.fail("negative rule count", toks[1]);

  for (long long k = 0; k < count; ++k) {
    QFRule rule;
    toks = rd.next("rule");
    rd.expectWord(toks, 0, "rule");
    if (rd.integer(toks, 1, "rule number") != k + 1) rd.fail("rules must be numbered in order", toks[1]);
    rd.expectWord(toks, 2, "fitness");
    rule.fitness = rd.number(toks, 3, "fitness");
    rd.expectEnd(toks, 4);

    bool first = true;
    while (true) {
      toks = rd.next("antecedent or consequent");
      if (rd.at(toks, 0, "keyword").text == "then") break;
      rd.expectWord(toks, 0, first ? "if" : "and");
      first = false;
      const auto &subject = rd.at(toks, 1, "proposition");
      if (subject.text == "d(h)") {
        if (rule.velocity) rd.fail("sector propositions must precede the velocity proposition", subject);
        rd.expectWord(toks, 2, "is");
        SectorProposition s;
        s.distance = makeLabel(rd, rd.at(toks, 3, "distance label"), d.distance, "d");
        rd.expectWord(toks, 4, "in");
        s.q = rd.number(toks, 5, "quantifier");
        rd.expectWord(toks, 6, "percent");
        rd.expectWord(toks, 7, "of");
        s.beams = makeLabel(rd, rd.at(toks, 8, "beam label"), d.beam, "b");
        rd.expectEnd(toks, 9);
        rule.sectors.push_back(std::move(s));
      } else if (subject.text == "velocity") {
        if (rule.velocity) rd.fail("duplicate velocity proposition", subject);
        rd.expectWord(toks, 2, "is");
        rule.velocity = VelocityProposition{makeLabel(rd, rd.at(toks, 3, "velocity label"), d.velocity, "v")};
        rd.expectEnd(toks, 4);
      } else {
        rd.fail("unknown proposition", subject);
      }
    }
    if (kb.kind == KbKind::Regression) {
      rd.expectWord(toks, 1, "vlin");
      rd.expectWord(toks, 2, "is");
      int vlin = parseLabel(rd, rd.at(toks, 3, "vlin label"), "vlin", 1)[0];
      rd.expectWord(toks, 4, "and");
      rd.expectWord(toks, 5, "vang");
      rd.expectWord(toks, 6, "is");
      int vang = parseLabel(rd, rd.at(toks, 7, "vang label"), "vang", 1)[0];
      rd.expectEnd(toks, 8);
      if (vlin < 1 || vlin > d.vlinGranularity) rd.fail("vlin label out of range", toks[3]);
      if (vang < 1 || vang > d.vangGranularity) rd.fail("vang label out of range", toks[7]);
      rule.consequent = Consequent{vlin, vang};
    } else {
      rd.expectWord(toks, 1, "class");
      rd.expectWord(toks, 2, "is");
      int c = parseLabel(rd, rd.at(toks, 3, "class label"), "c", 1)[0];
      rd.expectEnd(toks, 4);
      if (c < 1 || c > kb.classCount) rd.fail("class out of range", toks[3]);
      rule.consequent = ClassConsequent{c};
    }
    toks = rd.next("end");
    rd.expectWord(toks, 0, "end");
    rd.expectEnd(toks, 1);

    if (auto v = validate(rule, d, kb.kind == KbKind::Classification ? kb.classCount : 0); !v) {
      throw ParseError("invalid rule: " + v.diagnostics.front(), rd.line(), 1, "");
    }
    kb.rules.push_back(std::move(rule));
  }
  if (!rd.done()) {
    auto rest = rd.next("end of document");
    rd.fail("content after the declared rules", rest.front());
  }
  return kb;
}

KnowledgeBase loadKb(const std::string &path) { return parseKb(readFile(path)); }

void saveKb(const std::string &path, const KnowledgeBase &kb) { writeFile(path, serializeKb(kb)); }

}  // namespace iqfrl

#include "iqfrl/dataset.hpp"

#include <cmath>
#include <sstream>

#include "iqfrl/kb_io.hpp"
#include "iqfrl/text.hpp"

namespace iqfrl {

std::string serializeDataset(const Dataset &data) {
  std::ostringstream os;
  os << "iqfrl-data 1\n";
  if (data.kind == KbKind::Regression) {
    os << "kind regression\n";
  } else {
    os << "kind classification " << data.classCount << '\n';
  }
  os << "beams " << data.domain.beamCount() << '\n';
  os << serializeDomain(data.domain);
  os << "examples " << data.examples.size() << '\n';
  for (const auto &e : data.examples) {
    for (double d : e.distances) os << formatDouble(d) << ' ';
    os << formatDouble(e.velocity) << ' ';
    if (data.kind == KbKind::Regression) {
      os << formatDouble(e.vlin) << ' ' << formatDouble(e.vang) << '\n';
    } else {
      os << e.classId << '\n';
    }
  }
  return os.str();
}

Dataset parseDataset(std::string_view text) {
  LineReader rd(text, true);
  Dataset data;

  auto toks = rd.next("'iqfrl-data 1' header");
  rd.expectWord(toks, 0, "iqfrl-data");
  rd.expectWord(toks, 1, "1");
  rd.expectEnd(toks, 2);

  toks = rd.next("kind");
  rd.expectWord(toks, 0, "kind");
  const auto &kindTok = rd.at(toks, 1, "dataset kind");
  if (kindTok.text == "regression") {
    data.kind = KbKind::Regression;
    rd.expectEnd(toks, 2);
  } else if (kindTok.text == "classification") {
    data.kind = KbKind::Classification;
    data.classCount = static_cast<int>(rd.integer(toks, 2, "class count"));
    rd.expectEnd(toks, 3);
    if (data.classCount < 1) rd.fail("class count must be positive", toks[2]);
  } else {
    rd.fail("unknown dataset kind", kindTok);
  }

  toks = rd.next("beams");
  rd.expectWord(toks, 0, "beams");
  auto beams = rd.integer(toks, 1, "beam count");
  rd.expectEnd(toks, 2);
  if (beams < 1) rd.fail("beam count must be positive", toks[1]);

  data.domain = readDomain(rd);
  if (data.domain.beamCount() != static_cast<std::size_t>(beams)) {
    throw ParseError("beam universe disagrees with the declared beam count", rd.line(), 1, "");
  }

  toks = rd.next("examples");
  rd.expectWord(toks, 0, "examples");
  auto count = rd.integer(toks, 1, "example count");
  rd.expectEnd(toks, 2);
  if (count < 0) rd.fail("negative example count", toks[1]);

  const std::size_t nb = static_cast<std::size_t>(beams);
  const std::size_t fields = nb + (data.kind == KbKind::Regression ? 3 : 2);
  data.examples.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) {
    toks = rd.next("example record");
    if (toks.size() < fields) {
      throw ParseError("expected " + std::to_string(fields) + " fields, found " + std::to_string(toks.size()),
                       rd.line(), toks.empty() ? 1 : toks.back().column, "");
    }
    rd.expectEnd(toks, fields);
    Example e;
    e.distances.resize(nb);
    for (std::size_t h = 0; h < nb; ++h) {
      e.distances[h] = parseDouble(toks[h], rd.line());
      if (!std::isfinite(e.distances[h]) || e.distances[h] < 0.0) rd.fail("distance must be finite and >= 0", toks[h]);
    }
    e.velocity = parseDouble(toks[nb], rd.line());
    if (data.kind == KbKind::Regression) {
      e.vlin = parseDouble(toks[nb + 1], rd.line());
      e.vang = parseDouble(toks[nb + 2], rd.line());
    } else {
      e.classId = static_cast<int>(parseInteger(toks[nb + 1], rd.line()));
      if (e.classId < 1 || e.classId > data.classCount) rd.fail("class out of range", toks[nb + 1]);
    }
    for (double x : {e.velocity, e.vlin, e.vang}) {
      if (!std::isfinite(x)) rd.fail("non-finite value", toks[nb]);
    }
    data.examples.push_back(std::move(e));
  }
  if (!rd.done()) {
    auto rest = rd.next("end of document");
    rd.fail("more records than declared", rest.front());
  }
  return data;
}

Dataset loadDataset(const std::string &path) { return parseDataset(readFile(path)); }

void saveDataset(const std::string &path, const Dataset &data) { writeFile(path, serializeDataset(data)); }

}  // namespace iqfrl

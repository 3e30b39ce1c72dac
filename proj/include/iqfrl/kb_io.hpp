#pragma once

#include <string>
#include <string_view>

#include "iqfrl/rule.hpp"
#include "iqfrl/text.hpp"

namespace iqfrl {

/**
 * Text format for knowledge bases (".qfr").
 *
 *   qfr 1
 *   kind regression                      | kind classification
 *   classes <n> default <id>             (classification only)
 *   universe <distance|beam|quantifier|velocity> <min> <max>
 *   output <vlin|vang> <min> <max> <granularity>
 *   rules <count>
 *   rule <k> fitness <f>
 *   if d(h) is A_d^{g,j} in <q> percent of A_b^{g,j}
 *   and d(h) is ...                      (further sectors)
 *   and velocity is A_v^{g,j}            (optional)
 *   then vlin is A_vlin^{j} and vang is A_vang^{j}   | then class is A_c^{j}
 *   end
 *
 * '#' starts a comment. Numbers are written in their shortest round-trip form.
 */
std::string serializeKb(const KnowledgeBase &kb);

/// Throws ParseError with line/column and the offending token.
KnowledgeBase parseKb(std::string_view text);

KnowledgeBase loadKb(const std::string &path);
void saveKb(const std::string &path, const KnowledgeBase &kb);

std::string describeRule(const QFRule &rule);

/// The "universe"/"output" header lines shared by every file format.
std::string serializeDomain(const Domain &domain);
/// Reads the header lines written by serializeDomain.
Domain readDomain(LineReader &reader);

}  // namespace iqfrl

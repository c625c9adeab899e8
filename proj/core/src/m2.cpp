#include "fstgec/m2.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "fstgec/error.hpp"
#include "fstgec/text_util.hpp"

namespace fstgec {

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kMissing: return "Missing";
    case EditKind::kReplacement: return "Replacement";
    case EditKind::kUnnecessary: return "Unnecessary";
  }
  return "?";
}

EditKind EditSpan::Kind() const {
  if (start == end) return EditKind::kMissing;
  return replacement.empty() ? EditKind::kUnnecessary : EditKind::kReplacement;
}

EditSpan MakeEdit(std::size_t start, std::size_t end, std::vector<std::string> replacement) {
  if (start > end) throw InputError("edit span start after end");
  if (start == end && replacement.empty()) throw InputError("edit changes nothing");
  return EditSpan{start, end, std::move(replacement)};
}

const std::vector<EditSpan>& M2Record::FirstAnnotator() const {
  static const std::vector<EditSpan> kNone;
  return annotators.empty() ? kNone : annotators.begin()->second;
}

namespace {

long ParseInt(std::string_view s, std::size_t line, const char* what) {
  s = Trim(s);
  long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("non-integer ") + what + " '" + std::string(s) + "'", line);
  }
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto at = s.find(sep, pos);
    if (at == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, at - pos));
    pos = at + sep.size();
  }
}

}  // namespace

std::vector<M2Record> ParseM2(std::istream& in) {
  std::vector<M2Record> records;
  bool open = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) {
      open = false;
      continue;
    }
    if (line.rfind("S ", 0) == 0 || line == "S") {
      M2Record r;
      r.source = SplitWhitespace(std::string_view(line).substr(1));
      records.push_back(std::move(r));
      open = true;
      continue;
    }
    if (line.rfind("A ", 0) != 0) throw ParseError("expected an S or A line", lineno);
    if (!open) throw ParseError("A line before any S line", lineno);

    auto fields = SplitFields(std::string_view(line).substr(2), "|||");
    if (fields.size() != 6) throw ParseError("A line must have six |||-separated fields", lineno);
    auto offsets = SplitWhitespace(fields[0]);
    if (offsets.size() != 2) throw ParseError("A line needs 'start end' offsets", lineno);
    const long start = ParseInt(offsets[0], lineno, "offset");
    const long end = ParseInt(offsets[1], lineno, "offset");
    const int annotator = static_cast<int>(ParseInt(fields[5], lineno, "annotator id"));
    const std::string_view type = Trim(fields[1]);
    const std::string_view correction = Trim(fields[2]);

    M2Record& rec = records.back();
    auto& edits = rec.annotators[annotator];
    if (type == "noop" || correction == "-NONE-") continue;

    if (start < 0 || end < start || static_cast<std::size_t>(end) > rec.source.size()) {
      throw ParseError("edit offsets outside the source sentence", lineno);
    }
    auto replacement = SplitWhitespace(correction);
    if (start == end && replacement.empty()) throw ParseError("empty edit", lineno);
    edits.push_back(EditSpan{static_cast<std::size_t>(start), static_cast<std::size_t>(end),
                             std::move(replacement)});
  }
  for (auto& r : records) {
    for (auto& [id, edits] : r.annotators) std::sort(edits.begin(), edits.end());
  }
  return records;
}

std::vector<M2Record> ParseM2File(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseM2(in);
}

std::vector<EditSpan> ExtractEdits(const std::vector<std::string>& source,
                                   const std::vector<std::string>& hypothesis) {
  const std::size_t n = source.size(), m = hypothesis.size();
  std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t diag = d[i - 1][j - 1] + (source[i - 1] == hypothesis[j - 1] ? 0 : 1);
      d[i][j] = std::min({diag, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }

  enum Op { kMatch, kSub, kDel, kIns };
  std::vector<Op> ops;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && source[i - 1] == hypothesis[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      ops.push_back(kMatch);
      --i, --j;
    } else if (i > 0 && j > 0 && source[i - 1] != hypothesis[j - 1] &&
               d[i][j] == d[i - 1][j - 1] + 1) {
      ops.push_back(kSub);
      --i, --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ops.push_back(kDel);
      --i;
    } else {
      ops.push_back(kIns);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());

  std::vector<EditSpan> edits;
  std::size_t si = 0, hj = 0;
  std::size_t k = 0;
  while (k < ops.size()) {
    if (ops[k] == kMatch) {
      ++si, ++hj, ++k;
      continue;
    }
    EditSpan span;
    span.start = si;
    for (; k < ops.size() && ops[k] != kMatch; ++k) {
      if (ops[k] != kIns) ++si;
      if (ops[k] != kDel) span.replacement.push_back(hypothesis[hj++]);
    }
    span.end = si;
    edits.push_back(std::move(span));
  }
  return edits;
}

std::vector<std::string> ApplyEdits(const std::vector<std::string>& source,
                                    const std::vector<EditSpan>& edits) {
  std::vector<std::string> out;
  std::size_t cursor = 0;
  for (const auto& e : edits) {
    if (e.start < cursor || e.end > source.size() || e.start > e.end) {
      throw InputError("edits overlap or fall outside the source");
    }
    out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(cursor),
               source.begin() + static_cast<std::ptrdiff_t>(e.start));
    out.insert(out.end(), e.replacement.begin(), e.replacement.end());
    cursor = e.end;
  }
  out.insert(out.end(), source.begin() + static_cast<std::ptrdiff_t>(cursor), source.end());
  return out;
}

}  // namespace fstgec

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fstgec/error.hpp"

namespace fstgec {

// Ordered set of distinct, non-empty word tokens.
template <class Tag>
class TokenList {
 public:
  TokenList() = default;
  explicit TokenList(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].empty()) throw InputError("token list contains an empty token");
      for (std::size_t j = 0; j < i; ++j) {
        if (tokens_[j] == tokens_[i]) throw InputError("duplicate token in list: " + tokens_[i]);
      }
    }
  }

  const std::vector<std::string>& Tokens() const { return tokens_; }
  std::size_t Size() const { return tokens_.size(); }
  bool Empty() const { return tokens_.empty(); }

 private:
  std::vector<std::string> tokens_;
};

using DeletionList = TokenList<struct DeletionListTag>;
using InsertionList = TokenList<struct InsertionListTag>;

// Tokens deleted more than five times in the BEA-2019 dev set, most
// frequent first.
DeletionList DefaultDeletionList();
// ",", "-" and "'s".
InsertionList DefaultInsertionList();

// One token per line; anything after a tab (a frequency column) is ignored.
DeletionList LoadDeletionList(const std::filesystem::path& path);
InsertionList LoadInsertionList(const std::filesystem::path& path);

}  // namespace fstgec

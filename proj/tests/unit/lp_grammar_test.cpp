#include <gtest/gtest.h>

#include "support/lp_grammar.hpp"

using lpcheck::check_lp;

TEST(LpGrammar, AcceptsMinimalFile) {
  EXPECT_TRUE(check_lp("\\ c\nMinimize\n obj: 2 x + 3 y\nSubject To\n c1: x + y >= 1\nBinaries\n x y\nEnd\n").empty());
  EXPECT_TRUE(check_lp("Minimize\n obj: z\nSubject To\n c1: z - x <= 0\nBounds\n 1 <= z <= 3\n"
                       "Binaries\n x\nGenerals\n z\nEnd\n")
                  .empty());
}

TEST(LpGrammar, RejectsMalformedFiles) {
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x >= 1\n").empty()) << "missing End";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x y >= 1\nEnd\n").empty()) << "missing sign";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x >= y\nEnd\n").empty()) << "variable rhs";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x >= 1\n c1: x <= 2\nEnd\n").empty()) << "dup";
  EXPECT_FALSE(check_lp("Subject To\n c1: x >= 1\nMinimize\n obj: x\nEnd\n").empty()) << "order";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x >= 1\nBinaries\n w\nEnd\n").empty()) << "unused";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: 2 * x >= 1\nEnd\n").empty()) << "operator";
  EXPECT_FALSE(check_lp("Minimize\n obj: x\nSubject To\n c1: x >= 1\nEnd\nMinimize\n").empty()) << "after End";
  EXPECT_FALSE(check_lp("Minimize\n obj:\nSubject To\n c1: x >= 1\nEnd\n").empty()) << "empty objective";
}

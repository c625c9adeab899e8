#include "fstgec/fst.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "fstgec/error.hpp"

namespace fstgec {
namespace {

TEST(WeightTest, SemiringIdentities) {
  const Weight w(2.5);
  EXPECT_EQ(Times(w, Weight::One()), w);
  EXPECT_EQ(Plus(w, Weight::Zero()), w);
  EXPECT_EQ(Plus(Weight(3.0), Weight(5.0)), Weight(3.0));
  EXPECT_EQ(Times(Weight(3.0), Weight(5.0)), Weight(8.0));
  EXPECT_TRUE(Times(w, Weight::Zero()).IsZero());
}

TEST(WeightTest, ApproxEqualHandlesInfinity) {
  EXPECT_TRUE(ApproxEqual(Weight(1.0), Weight(1.0 + 1e-12)));
  EXPECT_FALSE(ApproxEqual(Weight(1.0), Weight(1.0 + 1e-6)));
  EXPECT_TRUE(ApproxEqual(Weight::Zero(), Weight::Zero()));
  EXPECT_FALSE(ApproxEqual(Weight::Zero(), Weight(1e300)));
}

TEST(SymbolTableTest, ReservesEpsilonAndSigma) {
  SymbolTable syms;
  EXPECT_EQ(syms.Symbol(kEpsilon), "<eps>");
  EXPECT_EQ(syms.Symbol(kSigma), "<sigma>");
  EXPECT_THROW(syms.AddSymbol("<eps>"), InputError);
  EXPECT_THROW(syms.AddSymbol("<sigma>"), InputError);
  EXPECT_THROW(syms.AddSymbol(""), InputError);
}

TEST(SymbolTableTest, IsBijective) {
  SymbolTable syms;
  const Label a = syms.AddSymbol("a");
  const Label b = syms.AddSymbol("b");
  EXPECT_NE(a, b);
  EXPECT_EQ(syms.AddSymbol("a"), a);
  EXPECT_EQ(syms.Symbol(b), "b");
  EXPECT_EQ(*syms.Find("a"), a);
  EXPECT_FALSE(syms.Find("c").has_value());
  EXPECT_THROW(syms.Symbol(99), InputError);
}

TEST(WeightedFstTest, ValidateRejectsDanglingArc) {
  auto syms = std::make_shared<SymbolTable>();
  WeightedFst fst(syms);
  const StateId s = fst.AddState();
  fst.SetStart(s);
  fst.AddArc(s, Arc{kEpsilon, kEpsilon, Weight::One(), 5});
  EXPECT_THROW(fst.Validate(), StructuralError);
}

TEST(WeightedFstTest, ValidateRejectsOneSidedSigma) {
  auto syms = std::make_shared<SymbolTable>();
  const Label a = syms->AddSymbol("a");
  WeightedFst fst(syms);
  const StateId s = fst.AddState();
  fst.SetStart(s);
  fst.AddArc(s, Arc{kSigma, a, Weight::One(), s});
  EXPECT_THROW(fst.Validate(), StructuralError);
}

TEST(WeightedFstTest, OutOfRangeStatesThrow) {
  auto syms = std::make_shared<SymbolTable>();
  WeightedFst fst(syms);
  EXPECT_THROW(fst.SetStart(0), StructuralError);
  EXPECT_THROW(fst.SetFinal(3), StructuralError);
  EXPECT_THROW(fst.AddArc(0, Arc{}), StructuralError);
}

TEST(FstTextTest, ReadsArcsAndFinals) {
  auto syms = std::make_shared<SymbolTable>();
  std::istringstream in("0\t1\ta\tb\t1.5\n1\t2\t<eps>\tc\n2\t0.25\n");
  const WeightedFst fst = ReadFstText(in, syms);
  ASSERT_EQ(fst.NumStates(), 3u);
  EXPECT_EQ(fst.Start(), 0);
  ASSERT_EQ(fst.Arcs(0).size(), 1u);
  EXPECT_EQ(syms->Symbol(fst.Arcs(0)[0].ilabel), "a");
  EXPECT_EQ(syms->Symbol(fst.Arcs(0)[0].olabel), "b");
  EXPECT_DOUBLE_EQ(fst.Arcs(0)[0].weight.Value(), 1.5);
  EXPECT_EQ(fst.Arcs(1)[0].ilabel, kEpsilon);
  EXPECT_DOUBLE_EQ(fst.Arcs(1)[0].weight.Value(), 0.0);
  EXPECT_DOUBLE_EQ(fst.Final(2).Value(), 0.25);
  EXPECT_FALSE(fst.IsFinal(1));
}

TEST(FstTextTest, ReportsLineOfBadField) {
  auto syms = std::make_shared<SymbolTable>();
  std::istringstream in("0\t1\ta\ta\n1\tx\n");
  try {
    ReadFstText(in, syms);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream three("0\t1\ta\n");
  EXPECT_THROW(ReadFstText(three, syms), ParseError);
}

TEST(FstTextTest, RoundTripPutsStartFirst) {
  auto syms = std::make_shared<SymbolTable>();
  const Label a = syms->AddSymbol("a");
  WeightedFst fst(syms);
  const StateId s0 = fst.AddState();
  const StateId s1 = fst.AddState();
  fst.SetStart(s1);
  fst.AddArc(s1, Arc{a, a, Weight(2.0), s0});
  fst.SetFinal(s0, Weight(0.5));

  std::ostringstream out;
  WriteFstText(out, fst);
  EXPECT_EQ(out.str(), "0\t1\ta\ta\t2\n1\t0.5\n");

  std::istringstream in(out.str());
  const WeightedFst back = ReadFstText(in, syms);
  EXPECT_EQ(back.Start(), 0);
  EXPECT_DOUBLE_EQ(back.Arcs(0)[0].weight.Value(), 2.0);
  EXPECT_DOUBLE_EQ(back.Final(1).Value(), 0.5);
}

}  // namespace
}  // namespace fstgec

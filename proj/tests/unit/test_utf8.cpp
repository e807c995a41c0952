#include <gtest/gtest.h>

#include "imla/utf8.hpp"

using namespace imla;

TEST(Utf8, DecodesTurkishLetters) {
    EXPECT_EQ(utf8::decode("ağız"), U"ağız");
    EXPECT_EQ(utf8::length("İçerde"), 6u);
    EXPECT_EQ(utf8::encode(U"şğü"), "şğü");
}

TEST(Utf8, InvalidBytesBecomeReplacementCharacters) {
    std::string const bad = "a\xff" "b";
    EXPECT_FALSE(utf8::is_valid(bad));
    EXPECT_EQ(utf8::decode(bad), U"a�b");
    EXPECT_FALSE(utf8::is_valid("\xc3"));
    EXPECT_TRUE(utf8::is_valid("çalışmak"));
}

TEST(Utf8, SliceUsesCodePointsAndClamps) {
    EXPECT_EQ(utf8::slice("oğlunada", 0, 6), "oğluna");
    EXPECT_EQ(utf8::slice("oğlunada", 6, 100), "da");
    EXPECT_EQ(utf8::slice("abc", 5, 9), "");
}

TEST(Utf8, RoundTripAllPlanes) {
    std::u32string s;
    for (char32_t c : {U'a', U'ç', U'€', U'\U0001F600'}) s.push_back(c);
    EXPECT_EQ(utf8::decode(utf8::encode(s)), s);
}

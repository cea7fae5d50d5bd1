// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "support/fixtures.hpp"

#include <filesystem>
#include <fstream>

namespace constat::testsupport {

namespace fs = std::filesystem;

const std::vector<KotlinRangeFixture>& kotlin_range_fixtures() {
  static const std::vector<KotlinRangeFixture> fixtures = {
      {"f01.kt",
       "val a = 1..10\n"
       "val b = 0 until 5\n"
       "val c = 10 downTo 1\n"
       "val d = 1.rangeTo(9)\n",
       {{"DOTDOT", "TOP_LEVEL"},
        {"UNTIL", "TOP_LEVEL"},
        {"DOWN_TO", "TOP_LEVEL"},
        {"RANGE_TO", "TOP_LEVEL"}}},
      {"f02.kt",
       "fun f02() {\n"
       "    for (i in 1..10) { println(i) }\n"
       "    for (j in 0 until 8) { println(j) }\n"
       "    for (k in 9 downTo 0) { println(k) }\n"
       "}\n",
       {{"DOTDOT", "FOR"}, {"UNTIL", "FOR"}, {"DOWN_TO", "FOR"}}},
      {"f03.kt",
       "fun f03(x: Int) {\n"
       "    if (x in 1..100) { println(\"a\") }\n"
       "    if (x in 0 until 50) { println(\"b\") }\n"
       "    if (x in 50 downTo 10) { println(\"c\") }\n"
       "}\n",
       {{"DOTDOT", "IF"}, {"UNTIL", "IF"}, {"DOWN_TO", "IF"}}},
      {"f04.kt",
       "fun f04(x: Int) {\n"
       "    var y = x\n"
       "    while (y in 1..5) { y += 1 }\n"
       "    while (y !in 0 until 3) { y -= 1 }\n"
       "}\n",
       {{"DOTDOT", "WHILE"}, {"UNTIL", "WHILE"}}},
      {"f05.kt",
       "fun f05(x: Int): String = when (x) {\n"
       "    in 1..10 -> \"low\"\n"
       "    in 20 downTo 11 -> \"mid\"\n"
       "    else -> \"high\"\n"
       "}\n",
       {{"DOTDOT", "WHEN"}, {"DOWN_TO", "WHEN"}}},
      {"f06.kt",
       "fun f06(): IntRange {\n"
       "    val r = 3..30\n"
       "    val s = 2.rangeTo(20)\n"
       "    return r\n"
       "}\n",
       {{"DOTDOT", "FUNCTION"}, {"RANGE_TO", "FUNCTION"}}},
      {"f07.kt",
       "// 1..10 until 5 downTo rangeTo in comment\n"
       "/* 0 until 9 */\n"
       "val s07 = \"1..10 until 7\"\n"
       "val t07 = \"\"\"raw 5 downTo 1 rangeTo\"\"\"\n",
       {}},
      {"f08.kt",
       "fun f08() {\n"
       "    for (i in 10.downTo(1)) { println(i) }\n"
       "    val q = 5.rangeTo(50)\n"
       "}\n",
       {{"DOWN_TO", "FOR"}, {"RANGE_TO", "FUNCTION"}}},
      {"f09.kt",
       "fun f09(x: Int) {\n"
       "    for (i in 1..4) {\n"
       "        if (x in 5..6) {\n"
       "            println(i)\n"
       "        }\n"
       "    }\n"
       "}\n",
       {{"DOTDOT", "FOR"}, {"DOTDOT", "IF"}}},
      {"f10.kt",
       "fun f10(list: List<Int>) {\n"
       "    list.forEach { if (it in 1..9) println(it) }\n"
       "    list.map { it until 100 }\n"
       "}\n",
       {{"DOTDOT", "IF"}, {"UNTIL", "FUNCTION"}}},
      {"f11.kt",
       "fun f11(x: Int) {\n"
       "    var v = x\n"
       "    do {\n"
       "        v += 1\n"
       "    } while (v in 0..99)\n"
       "}\n",
       {{"DOTDOT", "WHILE"}}},
      {"f12.kt",
       "fun f12(x: Int) = when (x in 1 until 50) {\n"
       "    true -> 1\n"
       "    else -> 0\n"
       "}\n",
       {{"UNTIL", "WHEN"}}},
      {"f13.kt",
       "fun f13() {\n"
       "    for (a in 0 until 10) {\n"
       "        for (b in 10 downTo 0) {\n"
       "            println(a + b)\n"
       "        }\n"
       "    }\n"
       "    while (readLine() != null) {\n"
       "        val r = 1 until 3\n"
       "        println(r)\n"
       "    }\n"
       "}\n",
       {{"UNTIL", "FOR"}, {"DOWN_TO", "FOR"}, {"UNTIL", "WHILE"}}},
      {"f14.kt",
       "val r14a = 'a'.rangeTo('z')\n"
       "fun f14(x: Int): Boolean {\n"
       "    if (x in 1.rangeTo(5)) return true\n"
       "    return false\n"
       "}\n",
       {{"RANGE_TO", "TOP_LEVEL"}, {"RANGE_TO", "IF"}}},
      {"f15.kt",
       "fun f15(x: Int) {\n"
       "    if (x in 9 downTo 1) println(\"d\")\n"
       "    when (x) {\n"
       "        in 100 downTo 90 -> println(\"t\")\n"
       "        else -> println(\"e\")\n"
       "    }\n"
       "}\n",
       {{"DOWN_TO", "IF"}, {"DOWN_TO", "WHEN"}}},
      {"f16.kt",
       "val top16 = 0 until 1\n"
       "fun f16(n: Int) {\n"
       "    var m = n\n"
       "    while (m in 2.rangeTo(8)) { m /= 2 }\n"
       "}\n",
       {{"UNTIL", "TOP_LEVEL"}, {"RANGE_TO", "WHILE"}}},
      {"f17.kt",
       "fun f17() {\n"
       "    val msg = \"range is 1..10 until x\"\n"
       "    println(msg)\n"
       "    val real = 2..20\n"
       "}\n",
       {{"DOTDOT", "FUNCTION"}}},
      {"f18.kt",
       "fun f18(x: Int): IntRange = when {\n"
       "    x > 0 -> 1..x\n"
       "    else -> x..0\n"
       "}\n",
       {{"DOTDOT", "WHEN"}, {"DOTDOT", "WHEN"}}},
      {"f19.kt",
       "fun f19() {\n"
       "    // val fake = 1..2\n"
       "    val real = (1..3).random()\n"
       "    val s = \"0 until 99\"\n"
       "    val deep = 5 until (10 downTo 2).first()\n"
       "}\n",
       {{"DOTDOT", "FUNCTION"},
        {"UNTIL", "FUNCTION"},
        {"DOWN_TO", "FUNCTION"}}},
      {"f20.kt",
       "val t20 = 7 downTo 3\n"
       "fun f20(): IntRange {\n"
       "    return 1..5\n"
       "}\n",
       {{"DOWN_TO", "TOP_LEVEL"}, {"DOTDOT", "FUNCTION"}}},
  };
  return fixtures;
}

std::map<std::pair<std::string, std::string>, std::size_t>
kotlin_range_expected_totals() {
  std::map<std::pair<std::string, std::string>, std::size_t> totals;
  for (const auto& fixture : kotlin_range_fixtures()) {
    for (const auto& expectation : fixture.expected) {
      ++totals[expectation];
    }
  }
  return totals;
}

std::string python_fig2_source() {
  return
      "while False:\n"
      "    pass\n"
      "while 2+2 != 4:\n"
      "    f()\n"
      "while x:\n"
      "    g()\n";
}

std::vector<std::pair<std::string, std::string>> python_satisfiable_corpus() {
  std::vector<std::pair<std::string, std::string>> files;
  const char* conditions[10] = {
      "True",       "1",        "n > 0",      "x",       "not False",
      "2 + 2 == 4", "f()",      "a and b",    "x != 0",  "len(items) > 0",
  };
  for (int i = 0; i < 50; ++i) {
    std::string name = "sat_" + std::to_string(i) + ".py";
    std::string body;
    body += "def work_" + std::to_string(i) + "(n, x, a, b, items):\n";
    body += "    while " + std::string(conditions[i % 10]) + ":\n";
    body += "        n = n - 1\n";
    body += "    return n\n";
    files.emplace_back(std::move(name), std::move(body));
  }
  return files;
}

void write_files(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::string>>& files) {
  fs::create_directories(dir);
  for (const auto& [name, content] : files) {
    fs::path path = fs::path(dir) / name;
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
}

void write_corpus(
    const std::string& corpus_dir,
    const std::map<std::string,
                   std::vector<std::pair<std::string, std::string>>>&
        projects) {
  for (const auto& [project, files] : projects) {
    write_files((fs::path(corpus_dir) / project).string(), files);
  }
}

std::map<std::string, std::vector<std::pair<std::string, std::string>>>
mixed_corpus(std::size_t projects, std::size_t files_per) {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> out;
  for (std::size_t p = 0; p < projects; ++p) {
    std::string project = "proj_" + std::to_string(p);
    std::vector<std::pair<std::string, std::string>> files;
    for (std::size_t f = 0; f < files_per; ++f) {
      if (f % 2 == 0) {
        std::string name = "src/k" + std::to_string(f) + ".kt";
        std::string content =
            "fun job" + std::to_string(f) + "() {\n"
            "    for (i in 1.." + std::to_string(10 + f) + ") {\n"
            "        if (i in 0 until " + std::to_string(5 + f) + ") {\n"
            "            println(i)\n"
            "        }\n"
            "    }\n"
            "    val d = " + std::to_string(20 + f) + " downTo 1\n"
            "}\n";
        files.emplace_back(std::move(name), std::move(content));
      } else {
        std::string name = "py/m" + std::to_string(f) + ".py";
        std::string content =
            "def task" + std::to_string(f) + "(n):\n"
            "    while " + std::to_string(f) + " != " + std::to_string(f) +
            ":\n"
            "        n += 1\n"
            "    while n > 0:\n"
            "        n -= 1\n"
            "    return n\n";
        files.emplace_back(std::move(name), std::move(content));
      }
    }
    out[project] = std::move(files);
  }
  return out;
}

}  // namespace constat::testsupport

// Regenerates the tic-tac-toe endgame dataset in FIMI form. The dataset is
// the complete set of terminal board positions with x moving first (every
// game stops at a three-in-a-row or a full board), labeled by whether x won.
// Binarization: one indicator item per (cell, player) pair, 18 items total;
// empty cells set no item. Board enumeration is exhaustive, so the output is
// bit-reproducible.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

namespace {

using Board = std::array<int, 9>;  // 0 empty, 1 x, 2 o

bool wins(const Board& b, int player) {
  static constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                       {0, 3, 6}, {1, 4, 7}, {2, 5, 8},
                                       {0, 4, 8}, {2, 4, 6}};
  for (const auto& line : kLines) {
    if (b[line[0]] == player && b[line[1]] == player && b[line[2]] == player) {
      return true;
    }
  }
  return false;
}

void play(Board& b, int player, int moves, std::set<Board>& finals) {
  for (int cell = 0; cell < 9; ++cell) {
    if (b[cell] != 0) continue;
    b[cell] = player;
    if (wins(b, player) || moves + 1 == 9) {
      finals.insert(b);
    } else {
      play(b, 3 - player, moves + 1, finals);
    }
    b[cell] = 0;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::string out_dir = ".";
  if (argc == 2) {
    out_dir = argv[1];
  } else if (argc > 2) {
    std::cerr << "usage: " << argv[0] << " [output-dir]\n";
    return 2;
  }

  std::set<Board> finals;
  Board board{};
  play(board, 1, 0, finals);

  int positives = 0;
  for (const Board& b : finals) positives += wins(b, 1);
  if (finals.size() != 958) {
    std::cerr << "unexpected terminal position count: " << finals.size()
              << " (expected 958)\n";
    return 1;
  }

  const std::string dat_path = out_dir + "/tictactoe.dat";
  const std::string lab_path = out_dir + "/tictactoe.lab";
  std::ofstream dat(dat_path);
  std::ofstream lab(lab_path);
  if (!dat || !lab) {
    std::cerr << "cannot write to " << out_dir << "\n";
    return 2;
  }
  for (const Board& b : finals) {
    bool first = true;
    for (int cell = 0; cell < 9; ++cell) {
      if (b[cell] == 0) continue;
      const int item = 2 * cell + (b[cell] == 2 ? 1 : 0);
      if (!first) dat << ' ';
      dat << item;
      first = false;
    }
    dat << '\n';
    lab << (wins(b, 1) ? '1' : '0') << '\n';
  }
  std::cerr << "tictactoe: N=" << finals.size() << " P=18 positives="
            << positives << " -> " << dat_path << ", " << lab_path << "\n";
  return 0;
}

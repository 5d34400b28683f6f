#include <iostream>

#include "wittlift/dispatch.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    wittlift::DispatchResult res = wittlift::dispatch(args);
    std::cout << res.report;
    return res.exit_code;
}

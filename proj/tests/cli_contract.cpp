// End-to-end exit-code contract against the real binary (not the in-process
// dispatcher): 0 affirmative, 1 negative verdict, 2 input error, 3 budget.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

#ifndef WITTLIFT_BIN
#error "WITTLIFT_BIN must point at the CLI executable"
#endif

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(WITTLIFT_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

} // namespace

int main() {
    fs::path dir = "cli_contract_tmp";
    fs::create_directories(dir);
    std::string fx = (dir / "fixtures").string();
    int failures = 0;
    auto check = [&](const std::string& args, int expected) {
        int got = run(args);
        bool ok = got == expected;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "exit " << got << " (want " << expected
                  << "): wittlift " << args << "\n";
        if (!ok) ++failures;
    };

    check("fixtures regen --dir " + fx, 0);
    check("smooth search --group " + fx + "/groups/C2.json --n 1 --d 1 --p 2", 0);
    check("smooth search --group " + fx + "/groups/C4.json --n 1 --d 1 --p 2", 1);
    check("lift p2 --rep " + fx + "/reps/c2_unipotent.json", 0);
    check("lift p2 --rep " + fx + "/does_not_exist.json", 2);
    check("oracle brute --rep " + fx + "/reps/c2_unipotent.json --budget 2", 3);
    check("totally --bogus", 2);

    // WITTLIFT_BUDGET environment override
    {
        std::string cmd = std::string("WITTLIFT_BUDGET=2 ") + WITTLIFT_BIN + " oracle brute --rep " +
                          fx + "/reps/c2_unipotent.json > /dev/null 2>&1";
        int got = WEXITSTATUS(std::system(cmd.c_str()));
        bool ok = got == 3;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "exit " << got
                  << " (want 3): WITTLIFT_BUDGET=2 oracle brute\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

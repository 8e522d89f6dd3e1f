from .ranndy import main

raise SystemExit(main())

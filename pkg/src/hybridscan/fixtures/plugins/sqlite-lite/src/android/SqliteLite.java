package org.example.sqlitelite;

import org.apache.cordova.CallbackContext;
import org.apache.cordova.CordovaPlugin;
import org.apache.cordova.PluginResult;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;
import android.database.sqlite.SQLiteDatabase;

public class SqliteLite extends CordovaPlugin {
    @Override
    public boolean execute(String action, JSONArray args, CallbackContext callbackContext) throws JSONException {
        SQLiteDatabase db = open(args.getString(0));
        callbackContext.sendPluginResult(new PluginResult(PluginResult.Status.OK, query(db, args.getString(1))));
        return true;
    }
}
